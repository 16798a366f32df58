//! Summable error schedules for inexact iterations.

use crate::error::{Error, Result};

/// A sequence of nonnegative error magnitudes with finite sum. Every
/// constructor enforces summability: power laws need exponent > 1 and
/// geometric schedules ratio < 1.
#[derive(Debug, Clone, PartialEq)]
pub enum ErrorSchedule {
    Zero,
    /// `eps_n = amplitude * (n + 1)^(-exponent)`, exponent > 1.
    PowerLaw { amplitude: f64, exponent: f64 },
    /// `eps_n = amplitude * ratio^n`, 0 <= ratio < 1.
    Geometric { amplitude: f64, ratio: f64 },
    /// Finite prefix, zero afterward.
    Explicit(Vec<f64>),
}

impl ErrorSchedule {
    pub fn zero() -> ErrorSchedule {
        ErrorSchedule::Zero
    }

    pub fn power_law(amplitude: f64, exponent: f64) -> Result<ErrorSchedule> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(Error::domain("power-law amplitude must be nonnegative"));
        }
        if !(exponent > 1.0) {
            return Err(Error::domain(
                "power-law exponent must exceed 1 for a summable schedule",
            ));
        }
        Ok(ErrorSchedule::PowerLaw { amplitude, exponent })
    }

    pub fn geometric(amplitude: f64, ratio: f64) -> Result<ErrorSchedule> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(Error::domain("geometric amplitude must be nonnegative"));
        }
        if !(0.0..1.0).contains(&ratio) {
            return Err(Error::domain("geometric ratio must lie in [0, 1)"));
        }
        Ok(ErrorSchedule::Geometric { amplitude, ratio })
    }

    pub fn explicit(values: Vec<f64>) -> Result<ErrorSchedule> {
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::domain("explicit schedule entries must be nonnegative"));
        }
        Ok(ErrorSchedule::Explicit(values))
    }

    /// `eps_n`.
    pub fn value(&self, n: usize) -> f64 {
        match self {
            ErrorSchedule::Zero => 0.0,
            ErrorSchedule::PowerLaw { amplitude, exponent } => {
                amplitude * ((n + 1) as f64).powf(-exponent)
            }
            ErrorSchedule::Geometric { amplitude, ratio } => amplitude * ratio.powi(n as i32),
            ErrorSchedule::Explicit(v) => v.get(n).copied().unwrap_or(0.0),
        }
    }

    /// Whether every term is zero.
    pub fn is_zero(&self) -> bool {
        match self {
            ErrorSchedule::Zero => true,
            ErrorSchedule::PowerLaw { amplitude, .. }
            | ErrorSchedule::Geometric { amplitude, .. } => *amplitude == 0.0,
            ErrorSchedule::Explicit(v) => v.iter().all(|&x| x == 0.0),
        }
    }

    /// Exact partial sum of the first `n` terms.
    pub fn partial_sum(&self, n: usize) -> f64 {
        match self {
            ErrorSchedule::Zero => 0.0,
            ErrorSchedule::Geometric { amplitude, ratio } => {
                if *ratio == 0.0 {
                    if n > 0 { *amplitude } else { 0.0 }
                } else {
                    amplitude * (1.0 - ratio.powi(n as i32)) / (1.0 - ratio)
                }
            }
            ErrorSchedule::PowerLaw { .. } => (0..n).map(|k| self.value(k)).sum(),
            ErrorSchedule::Explicit(v) => v.iter().take(n).sum(),
        }
    }

    /// A closed-form upper bound on the tail sum from index `n` on.
    pub fn tail_bound(&self, n: usize) -> f64 {
        match self {
            ErrorSchedule::Zero => 0.0,
            ErrorSchedule::PowerLaw { amplitude, exponent } => {
                // eps_n + integral bound on the rest.
                let m = (n + 1) as f64;
                amplitude * (m.powf(-exponent) + m.powf(1.0 - exponent) / (exponent - 1.0))
            }
            ErrorSchedule::Geometric { amplitude, ratio } => {
                amplitude * ratio.powi(n as i32) / (1.0 - ratio)
            }
            ErrorSchedule::Explicit(v) => v.iter().skip(n).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_enforce_summability() {
        assert!(ErrorSchedule::power_law(1.0, 1.0).is_err());
        assert!(ErrorSchedule::power_law(-0.5, 2.0).is_err());
        assert!(ErrorSchedule::geometric(1.0, 1.0).is_err());
        assert!(ErrorSchedule::explicit(vec![0.1, -0.2]).is_err());
    }

    #[test]
    fn schedule_values() {
        assert_eq!(ErrorSchedule::zero().value(17), 0.0);
        let g = ErrorSchedule::geometric(1.0, 0.5).unwrap();
        assert_eq!(g.value(3), 0.125);
        let e = ErrorSchedule::explicit(vec![0.5, 0.25]).unwrap();
        assert_eq!(e.value(1), 0.25);
        assert_eq!(e.value(2), 0.0);
    }

    #[test]
    fn power_law_partial_sum_stays_below_the_series_limit() {
        // sum 1/(n+1)^2 over n < 10^6 against pi^2/6.
        let s = ErrorSchedule::power_law(1.0, 2.0).unwrap();
        let partial = s.partial_sum(1_000_000);
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(partial < zeta2 + 1e-6);
        assert!(partial > zeta2 - 1e-3);
    }

    #[test]
    fn tail_bounds_dominate_empirical_tails() {
        let schedules = [
            ErrorSchedule::power_law(0.5, 2.0).unwrap(),
            ErrorSchedule::geometric(2.0, 0.9).unwrap(),
            ErrorSchedule::explicit(vec![1.0, 0.5, 0.2, 0.1]).unwrap(),
        ];
        for s in &schedules {
            for &n in &[0usize, 1, 5, 50] {
                let empirical: f64 = (n..n + 20_000).map(|k| s.value(k)).sum();
                assert!(s.tail_bound(n) >= empirical - 1e-12);
            }
        }
    }
}
