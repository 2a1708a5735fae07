//! Turning a monochromatic Hamiltonian tight cycle of the shadow into a
//! Hamiltonian t-tight Berge-cycle of the hypergraph.
//!
//! Each of the `n` cyclic windows of the core must get its own hyperedge of
//! the cycle color containing it. A valid witness gives every window at least
//! `r - t + 1` candidates and no edge covers more than `r - t + 1` windows, so
//! Hall's condition holds and a perfect matching always exists.

use thiserror::Error;

use crate::certificate::{validate_witness, verify_berge_certificate, BergeCertificate, TightCycleWitness, Violation};
use crate::hypergraph::ColoredHypergraph;
use crate::matching::max_bipartite_matching;
use crate::shadow::ShadowMulticoloring;
use crate::subset::{for_each_superset, rank_sorted, unrank_subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("witness invalid at position {position}")]
    WitnessInvalid { position: usize },
    #[error("tightness mismatch: shadow has t = {shadow}, caller asked for t = {requested}")]
    Tightness { shadow: usize, requested: usize },
    #[error("matching covers only {matched} of {n} positions")]
    MatchingIncomplete { matched: usize, n: usize },
    #[error("extracted certificate failed verification: {0}")]
    Verification(Violation),
}

/// Positions of a cycle on one side, candidate hyperedges on the other.
#[derive(Debug, Clone)]
pub struct PositionEdgeBipartite {
    /// Sorted window (t consecutive core vertices) of every position.
    pub windows: Vec<Vec<usize>>,
    /// Colex ranks of the right-side hyperedges, ascending.
    pub right: Vec<u64>,
    /// For each position, indices into `right` in ascending rank order.
    pub adj: Vec<Vec<usize>>,
}

impl PositionEdgeBipartite {
    /// Builds the graph for `core` in `color`. Only hyperedges containing at
    /// least one window appear on the right.
    pub fn build(core: &[usize], t: usize, color: u8, h: &ColoredHypergraph) -> Self {
        let n = core.len();
        let windows: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut w: Vec<usize> = (0..t).map(|j| core[(i + j) % n]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        let mut per_position: Vec<Vec<u64>> = Vec::with_capacity(n);
        for w in &windows {
            let mut cands = Vec::new();
            for_each_superset(w, h.r(), h.n(), |e| {
                let rank = rank_sorted(e);
                if h.color_at(rank as usize) == color {
                    cands.push(rank);
                }
            });
            cands.sort_unstable();
            per_position.push(cands);
        }
        let mut right: Vec<u64> = per_position.iter().flatten().copied().collect();
        right.sort_unstable();
        right.dedup();
        let adj = per_position
            .iter()
            .map(|cands| cands.iter().map(|k| right.binary_search(k).expect("present")).collect())
            .collect();
        PositionEdgeBipartite { windows, right, adj }
    }

    /// Largest number of positions any single right vertex is adjacent to.
    pub fn max_right_degree(&self) -> usize {
        let mut deg = vec![0usize; self.right.len()];
        for nb in &self.adj {
            for &k in nb {
                deg[k] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn min_left_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Maximum matching, position -> right index.
    pub fn max_matching(&self) -> Vec<Option<usize>> {
        max_bipartite_matching(&self.adj, self.right.len())
    }
}

/// Extends a validated tight-cycle witness to a verified certificate.
pub fn extend_tight_cycle(
    w: &TightCycleWitness,
    h: &ColoredHypergraph,
    s: &ShadowMulticoloring,
    t: usize,
) -> Result<BergeCertificate, ExtractError> {
    if s.t() != t {
        return Err(ExtractError::Tightness { shadow: s.t(), requested: t });
    }
    validate_witness(w, s).map_err(|position| ExtractError::WitnessInvalid { position })?;
    let g = PositionEdgeBipartite::build(&w.core, t, w.color, h);
    let m = g.max_matching();
    let matched = m.iter().flatten().count();
    if matched < w.core.len() {
        return Err(ExtractError::MatchingIncomplete { matched, n: w.core.len() });
    }
    let edges = m
        .iter()
        .map(|k| unrank_subset(g.right[k.expect("perfect")], h.n(), h.r()).expect("rank in range"))
        .collect();
    let cert = BergeCertificate { color: w.color, core: w.core.clone(), edges, t };
    match verify_berge_certificate(&cert, h, t) {
        crate::certificate::VerificationReport::Pass => Ok(cert),
        crate::certificate::VerificationReport::Fail(v) => Err(ExtractError::Verification(v)),
    }
}
