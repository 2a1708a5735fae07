//! Berge-cycle certificates and the strict verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hypergraph::ColoredHypergraph;
use crate::shadow::ShadowMulticoloring;
use crate::subset::{rank_sorted, rank_subset};

/// A Hamiltonian t-tight Berge-cycle: core sequence `v_1..v_n` plus distinct
/// edges where `edges[i]` contains `core[i..i+t]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCertificate {
    pub color: u8,
    pub core: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
    pub t: usize,
}

impl BergeCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Rotates `(core, edges)` together by `k` positions.
    pub fn rotated(&self, k: usize) -> Self {
        let mut out = self.clone();
        if !out.core.is_empty() {
            let k = k % out.core.len();
            out.core.rotate_left(k);
            out.edges.rotate_left(k);
        }
        out
    }

    /// Maps vertices through `perm` (old id -> new id).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for v in &mut out.core {
            *v = perm[*v];
        }
        for e in &mut out.edges {
            for v in e.iter_mut() {
                *v = perm[*v];
            }
            e.sort_unstable();
        }
        out
    }
}

/// A Hamiltonian tight cycle in one color of the shadow multi-coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCycleWitness {
    pub color: u8,
    pub core: Vec<usize>,
}

/// First problem found by [`verify_berge_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CoreLength { got: usize, n: usize },
    NotPermutation { position: usize, vertex: usize },
    Tightness { t: usize, r: usize },
    EdgeCount { got: usize, n: usize },
    EdgeShape { position: usize, edge: Vec<usize> },
    DuplicateEdge { first: usize, second: usize },
    WrongColor { position: usize, found: u8, claimed: u8 },
    Containment { position: usize, missing: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoreLength { got, n } => write!(f, "core length: core has {got} vertices, expected {n}"),
            Violation::NotPermutation { position, vertex } => {
                write!(f, "core is not a permutation: vertex {vertex} at position {position}")
            }
            Violation::Tightness { t, r } => write!(f, "tightness: t = {t} outside 2..={r}"),
            Violation::EdgeCount { got, n } => write!(f, "edge count: {got} edges, expected {n}"),
            Violation::EdgeShape { position, edge } => {
                write!(f, "edge shape: edge {position} {edge:?} is not an r-set of the vertex range")
            }
            Violation::DuplicateEdge { first, second } => {
                write!(f, "duplicate edge: edges {first} and {second} coincide")
            }
            Violation::WrongColor { position, found, claimed } => {
                write!(f, "wrong color: edge {position} has color {found}, certificate claims {claimed}")
            }
            Violation::Containment { position, missing } => {
                write!(f, "containment: edge {position} misses core vertex {missing}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationReport {
    Pass,
    Fail(Violation),
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, VerificationReport::Pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationReport::Pass => f.write_str("pass"),
            VerificationReport::Fail(v) => write!(f, "fail: {v}"),
        }
    }
}

/// Checks every certificate invariant against `h`, reporting the first
/// violation. The certificate's own `t` field is ignored in favor of `t`.
pub fn verify_berge_certificate(cert: &BergeCertificate, h: &ColoredHypergraph, t: usize) -> VerificationReport {
    match check(cert, h, t) {
        Ok(()) => VerificationReport::Pass,
        Err(v) => VerificationReport::Fail(v),
    }
}

fn check(cert: &BergeCertificate, h: &ColoredHypergraph, t: usize) -> Result<(), Violation> {
    let (n, r) = (h.n(), h.r());
    if cert.core.len() != n {
        return Err(Violation::CoreLength { got: cert.core.len(), n });
    }
    let mut seen = vec![false; n];
    for (position, &vertex) in cert.core.iter().enumerate() {
        if vertex >= n || std::mem::replace(&mut seen[vertex], true) {
            return Err(Violation::NotPermutation { position, vertex });
        }
    }
    if t < 2 || t > r {
        return Err(Violation::Tightness { t, r });
    }
    if cert.edges.len() != n {
        return Err(Violation::EdgeCount { got: cert.edges.len(), n });
    }
    let mut ranks = Vec::with_capacity(n);
    let mut sorted = Vec::with_capacity(r);
    for (position, e) in cert.edges.iter().enumerate() {
        sorted.clear();
        sorted.extend_from_slice(e);
        sorted.sort_unstable();
        let rank = if e.len() == r { rank_subset(&sorted, n).ok() } else { None };
        let Some(rank) = rank else {
            return Err(Violation::EdgeShape { position, edge: e.clone() });
        };
        ranks.push((rank, position));
    }
    let mut by_rank = ranks.clone();
    by_rank.sort_unstable();
    if let Some(w) = by_rank.windows(2).find(|w| w[0].0 == w[1].0) {
        let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
        return Err(Violation::DuplicateEdge { first: a, second: b });
    }
    for (position, &(rank, _)) in ranks.iter().enumerate() {
        let found = h.color_at(rank as usize);
        if found != cert.color {
            return Err(Violation::WrongColor { position, found, claimed: cert.color });
        }
        let e = &cert.edges[position];
        for j in 0..t {
            let v = cert.core[(position + j) % n];
            if !e.contains(&v) {
                return Err(Violation::Containment { position, missing: v });
            }
        }
    }
    Ok(())
}

/// Checks that every cyclic window of `t` consecutive core vertices has
/// `w.color` among its t-good colors. Returns the first failing position.
pub fn validate_witness(w: &TightCycleWitness, s: &ShadowMulticoloring) -> Result<(), usize> {
    let n = s.n();
    let t = s.t();
    if w.core.len() != n || w.color == 0 || w.color as usize > s.c() {
        return Err(0);
    }
    let mut seen = vec![false; n];
    for (i, &v) in w.core.iter().enumerate() {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(i);
        }
    }
    let mut win = vec![0usize; t];
    for i in 0..n {
        for (j, slot) in win.iter_mut().enumerate() {
            *slot = w.core[(i + j) % n];
        }
        win.sort_unstable();
        if !s.is_good_rank(rank_sorted(&win) as usize, w.color) {
            return Err(i);
        }
    }
    Ok(())
}
