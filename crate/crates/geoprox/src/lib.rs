//! Cyclic and alternating iterations of firmly nonexpansive mappings on
//! model geodesic spaces, with explicit asymptotic-regularity rate
//! certificates, inequality falsifiers and convergence-regime
//! classification.

pub mod analysis;
pub mod certificates;
pub mod config;
pub mod error;
pub mod geometry;
pub mod iteration;
pub mod operators;
pub mod plot;
pub mod runner;
pub mod sets;

pub use analysis::{MinProblem, Regime, RegimeVerdict};
pub use certificates::{CertContext, CertReport, RateCertificate};
pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use geometry::{Model, Point, SampleBounds, Space, TreePos, TreeSpec};
pub use iteration::{
    run_alternating, run_cyclic, AlternatingProblem, CyclicProblem, ErrorSchedule,
    IterationTrace, Termination,
};
pub use operators::{FunctionSpec, Mapping, PropertyReport};
pub use sets::{ConvexSet, SetDistance};
