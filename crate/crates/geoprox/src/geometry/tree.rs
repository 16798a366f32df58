//! Metric trees: finite trees with positive edge lengths, points living on
//! edges. Unique paths make distance, interpolation and projection exact.

use crate::error::{Error, Result};

/// A finite metric tree. Vertices are `0..n`; each edge carries a positive
/// length. Connectivity and acyclicity are checked at construction, and
/// all-pairs vertex distances plus next-hop tables are precomputed.
#[derive(Debug, Clone)]
pub struct TreeSpec {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<(usize, usize)>>,
    vdist: Vec<Vec<f64>>,
    /// `next[u][v]` = (neighbor of u on the path to v, edge index used).
    next: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for TreeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.edges == other.edges
    }
}

/// A position on a tree: an edge index plus the offset (in length units)
/// from the edge's first endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreePos {
    pub edge: usize,
    pub offset: f64,
}

impl TreeSpec {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::domain("tree must have at least one vertex"));
        }
        if edges.len() + 1 != n_vertices {
            return Err(Error::domain(format!(
                "a tree on {n_vertices} vertices needs exactly {} edges, got {}",
                n_vertices - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n_vertices];
        for (i, &(u, v, len)) in edges.iter().enumerate() {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::domain(format!("edge {i} references unknown vertex")));
            }
            if u == v {
                return Err(Error::domain(format!("edge {i} is a self-loop")));
            }
            if !(len > 0.0) || !len.is_finite() {
                return Err(Error::domain(format!("edge {i} must have positive finite length")));
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
        }

        // BFS from every vertex: distances plus first-hop reconstruction.
        let mut vdist = vec![vec![f64::INFINITY; n_vertices]; n_vertices];
        let mut next = vec![vec![(usize::MAX, usize::MAX); n_vertices]; n_vertices];
        for root in 0..n_vertices {
            let mut seen = vec![false; n_vertices];
            let mut queue = std::collections::VecDeque::new();
            seen[root] = true;
            vdist[root][root] = 0.0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(v, eidx) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        vdist[root][v] = vdist[root][u] + edges[eidx].2;
                        // first hop from v back toward root
                        next[v][root] = (u, eidx);
                        queue.push_back(v);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::domain("tree is not connected"));
            }
        }

        Ok(TreeSpec { n_vertices, edges, adj, vdist, next })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_len(&self, e: usize) -> f64 {
        self.edges[e].2
    }

    pub fn vertex_distance(&self, u: usize, v: usize) -> f64 {
        self.vdist[u][v]
    }

    pub(crate) fn validate_pos(&self, pos: TreePos) -> Result<()> {
        if pos.edge >= self.edges.len() {
            return Err(Error::domain(format!("edge index {} out of range", pos.edge)));
        }
        let len = self.edges[pos.edge].2;
        if !(0.0..=len).contains(&pos.offset) {
            return Err(Error::domain(format!(
                "offset {} outside [0, {len}] on edge {}",
                pos.offset, pos.edge
            )));
        }
        Ok(())
    }

    /// The position of a vertex, expressed on one of its incident edges.
    pub fn vertex_pos(&self, v: usize) -> TreePos {
        let &(_, eidx) = self.adj[v]
            .first()
            .expect("a connected tree with >= 2 vertices has no isolated vertex");
        let (a, _, len) = self.edges[eidx];
        TreePos { edge: eidx, offset: if a == v { 0.0 } else { len } }
    }

    fn dist_pos_to_vertex(&self, p: TreePos, v: usize) -> f64 {
        let (a, b, len) = self.edges[p.edge];
        (p.offset + self.vdist[a][v]).min(len - p.offset + self.vdist[b][v])
    }

    pub(crate) fn distance(&self, p: TreePos, q: TreePos) -> f64 {
        if p.edge == q.edge {
            return (p.offset - q.offset).abs();
        }
        // Canonical argument order keeps the result bit-exact symmetric.
        let (p, q) = if (p.edge, p.offset) <= (q.edge, q.offset) { (p, q) } else { (q, p) };
        let (qa, qb, qlen) = self.edges[q.edge];
        let via_a = self.dist_pos_to_vertex(p, qa) + q.offset;
        let via_b = self.dist_pos_to_vertex(p, qb) + (qlen - q.offset);
        via_a.min(via_b)
    }

    /// The oriented legs of the unique path from `p` to `q`:
    /// `(edge, from_offset, to_offset)` per traversed edge piece.
    fn route(&self, p: TreePos, q: TreePos) -> Vec<(usize, f64, f64)> {
        if p.edge == q.edge {
            return vec![(p.edge, p.offset, q.offset)];
        }
        let (pa, pb, plen) = self.edges[p.edge];
        let (qa, qb, qlen) = self.edges[q.edge];
        // Choose the exit endpoint of p's edge and entry endpoint of q's edge
        // minimizing total length.
        let mut best = (f64::INFINITY, pa, qa);
        for &(exit, exit_off) in &[(pa, p.offset), (pb, plen - p.offset)] {
            for &(entry, entry_off) in &[(qa, q.offset), (qb, qlen - q.offset)] {
                let total = exit_off + self.vdist[exit][entry] + entry_off;
                if total < best.0 {
                    best = (total, exit, entry);
                }
            }
        }
        let (_, exit, entry) = best;

        let mut legs = Vec::new();
        let exit_target = if exit == pa { 0.0 } else { plen };
        if (p.offset - exit_target).abs() > 0.0 {
            legs.push((p.edge, p.offset, exit_target));
        }
        let mut u = exit;
        while u != entry {
            let (hop, eidx) = self.next[u][entry];
            let (a, _, len) = self.edges[eidx];
            let (from, to) = if a == u { (0.0, len) } else { (len, 0.0) };
            legs.push((eidx, from, to));
            u = hop;
        }
        let entry_off = if entry == qa { 0.0 } else { qlen };
        if (entry_off - q.offset).abs() > 0.0 {
            legs.push((q.edge, entry_off, q.offset));
        }
        legs
    }

    /// Point at arc length `s` from `p` along the unique path toward `q`.
    pub(crate) fn walk(&self, p: TreePos, q: TreePos, s: f64) -> TreePos {
        let legs = self.route(p, q);
        let mut remaining = s;
        for &(edge, from, to) in &legs {
            let len = (to - from).abs();
            if remaining <= len {
                let dir = if to >= from { 1.0 } else { -1.0 };
                let elen = self.edges[edge].2;
                return TreePos { edge, offset: (from + dir * remaining).clamp(0.0, elen) };
            }
            remaining -= len;
        }
        q
    }

    pub(crate) fn interpolate(&self, p: TreePos, q: TreePos, t: f64) -> TreePos {
        if p.edge == q.edge {
            return TreePos { edge: p.edge, offset: p.offset + t * (q.offset - p.offset) };
        }
        let total = self.distance(p, q);
        self.walk(p, q, t * total)
    }

    /// Nearest vertex of `targets` to `p`; ties broken by lowest index.
    pub(crate) fn nearest_vertex(&self, p: TreePos, targets: &[usize]) -> Option<(usize, f64)> {
        targets
            .iter()
            .map(|&v| (v, self.dist_pos_to_vertex(p, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
    }
}
