//! Constructive search for a monochromatic Hamiltonian Berge-cycle in a
//! 3-colored `K_n^4`, `n >= 85`.
//!
//! Dispatch, in order:
//! 1. a vertex on at most one edge of some color → link reduction
//!    ([`lemma_a_construct`]);
//! 2. a pair with at most one good color → generic search;
//! 3. every vertex in one of the classes `B_1..B_4` → tight cycle in a
//!    good-pair graph, extended by matching;
//! 4. otherwise pick a pivot `x`, relabel colors, build Γ
//!    ([`construct_gamma_case1`] / [`construct_gamma_case2`]), find a
//!    Hamiltonian cycle and extend it ([`extend_to_berge`]).
//!
//! Anything the construction should guarantee but cannot complete is
//! recorded as a breach in the trace and handed to the generic search.

mod extend;
mod fixtures;
mod gamma;
mod lemma;
mod profile;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::berge_extract::extend_tight_cycle;
use crate::certificate::{verify_berge_certificate, BergeCertificate, Violation};
use crate::hamiltonicity::{chvatal_holds, find_hamiltonian_cycle_with, find_mono_ham_tight_cycle_with, HamOutcome, SearchConfig, TightOutcome};
use crate::hypergraph::ColoredHypergraph;
use crate::search::{generic_search, shadow_search, Attempt, GenericOutcome, ShadowSearch};
use crate::shadow::{build_shadow, mask_to_colors, ShadowMulticoloring};

pub use extend::{extend_to_berge, normalize_cycle};
pub use fixtures::{monochromatic_link, near_missing_color, single_good_pair, without_color, ProfileFixture, ProfileFixtureError};
pub use gamma::{case2_early_exit, construct_gamma_case1, construct_gamma_case2, Backing, Edge4, GammaConstruction, Provenance, Tag};
pub use lemma::{lemma_a_construct, lemma_scan, reinsert_vertex, vertex_color_counts};
pub use profile::{
    alternate_split, classify, classify_and_pivot, compute_u_profiles, relabel_for, BClassification, PivotOutcome,
    PivotSelection, ProfileResult, UProfile,
};

pub const MIN_N: usize = 85;

#[derive(Debug, Error)]
pub enum R4Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("pivot {x} violates the size invariants (|U23|, |U12|, |U13|, |U123|) = {sizes:?}")]
    PivotInvariantViolation { x: usize, sizes: [usize; 4] },
    #[error("vertex {vertex}: needed {needed} reserved color-1 edges, found {found}")]
    ReservationUnsatisfiable { vertex: usize, needed: usize, found: usize },
    #[error("extension failed at position {position} (pair {pair:?}, {} candidates)", pool.len())]
    ExtensionFailed { position: usize, pair: [usize; 2], pool: Vec<Vec<usize>> },
    #[error("constructed certificate rejected: {0}")]
    Verification(Violation),
    #[error("fallback search exhausted: {0}")]
    FallbackExhausted(String),
    #[error("unresolved: every applicable search ran out of budget")]
    Unresolved(Box<ConstructionTrace>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    SingleGoodFallback,
    BCover,
    /// A vertex lies on at most one edge of some color.
    NearMissingColor,
    /// As above, with the color absent altogether.
    ColorRelabelReduction,
    #[serde(rename = "case-1")]
    Case1,
    #[serde(rename = "case-2")]
    Case2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub branch: Branch,
    pub subcase: String,
    pub decisions: Vec<String>,
    pub fallbacks: Vec<Attempt>,
    /// Color relabeling applied before the construction (`old -> new`).
    pub relabel: Option<[u8; 3]>,
    pub breaches: Vec<String>,
}

impl ConstructionTrace {
    fn new(branch: Branch) -> Self {
        ConstructionTrace {
            branch,
            subcase: String::new(),
            decisions: vec![],
            fallbacks: vec![],
            relabel: None,
            breaches: vec![],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

#[derive(Debug, Clone, Default)]
pub struct R4Config {
    pub search: SearchConfig,
    /// Where breach reproducers (coloring + trace) are written.
    pub reproducer_dir: Option<PathBuf>,
}

pub type R4Result = Result<(BergeCertificate, ConstructionTrace), R4Error>;

pub fn check_params(h: &ColoredHypergraph) -> Result<(), R4Error> {
    if h.r() != 4 || h.c() != 3 || h.n() < MIN_N {
        return Err(R4Error::InvalidParams(format!(
            "need r=4, c=3, n>={MIN_N}; got n={} r={} c={}",
            h.n(),
            h.r(),
            h.c()
        )));
    }
    Ok(())
}

pub fn r4_find(h: &ColoredHypergraph, cfg: &R4Config) -> R4Result {
    check_params(h)?;
    let s = build_shadow(h, 2).map_err(|e| R4Error::InvalidParams(e.to_string()))?;

    if let Some((v, i, k)) = lemma_scan(&s) {
        let absent = h.histogram()[i as usize] == 0;
        let branch = if absent { Branch::ColorRelabelReduction } else { Branch::NearMissingColor };
        let mut trace = ConstructionTrace::new(branch);
        trace.decisions.push(format!("vertex {v} lies on {k} edge(s) of color {i}"));
        match lemma_a_construct(h, v, i, &cfg.search, &mut trace.fallbacks) {
            Ok((cert, label)) => {
                trace.subcase = label;
                return done(h, cert, trace);
            }
            Err(e) => return fallback(h, trace, cfg, format!("link reduction: {e}")),
        }
    }

    let profiles = match compute_u_profiles(&s)? {
        ProfileResult::SingleGoodEdge { pair, goodset } => {
            let mut trace = ConstructionTrace::new(Branch::SingleGoodFallback);
            trace.subcase = "generic search".into();
            trace.decisions.push(format!("pair {pair:?} has good colors {:?}", mask_to_colors(goodset)));
            return search_only(h, trace, cfg);
        }
        ProfileResult::Profiles(p) => p,
    };

    let (_, outcome) = match classify_and_pivot(&profiles) {
        Ok(x) => x,
        Err(e) => {
            let trace = ConstructionTrace::new(Branch::Case1);
            return fallback(h, trace, cfg, e.to_string());
        }
    };
    let sel = match outcome {
        PivotOutcome::BCover => {
            let mut trace = ConstructionTrace::new(Branch::BCover);
            trace.subcase = "good-pair tight cycle".into();
            return match shadow_search(h, &s, &cfg.search, &mut trace.fallbacks) {
                ShadowSearch::Found(cert) => done(h, cert, trace),
                _ => fallback(h, trace, cfg, "no tight cycle in any good-pair graph".into()),
            };
        }
        PivotOutcome::Pivot(sel) => sel,
    };
    pivot_construction(h, sel, cfg)
}

fn pivot_construction(h: &ColoredHypergraph, sel: PivotSelection, cfg: &R4Config) -> R4Result {
    let case2 = sel.u23.len() == 1;
    let mut trace = ConstructionTrace::new(if case2 { Branch::Case2 } else { Branch::Case1 });
    trace.relabel = Some(sel.sigma);
    trace.decisions.push(format!(
        "pivot x={} pi={} |U23|={} |U12|={} |U13|={} |U123|={} y={} z={}",
        sel.x,
        sel.pi,
        sel.u23.len(),
        sel.u12.len(),
        sel.u13.len(),
        sel.u123.len(),
        sel.y,
        sel.z
    ));
    let inv = |k: u8| -> u8 { (1..=3u8).find(|&o| sel.sigma[o as usize - 1] == k).expect("permutation") };
    let h2 = h.recolored(&sel.sigma);
    let s2 = build_shadow(&h2, 2).map_err(|e| R4Error::InvalidParams(e.to_string()))?;
    let classes = match compute_u_profiles(&s2)? {
        ProfileResult::Profiles(p) => classify(&p),
        ProfileResult::SingleGoodEdge { .. } => unreachable!("relabeling keeps good-set sizes"),
    };

    if case2 && case2_early_exit(h.n(), &sel, &classes) {
        trace.subcase = "case-2 B1-early-exit".into();
        let what = "good-pair cycle color=2".to_string();
        return match find_mono_ham_tight_cycle_with(&s2, 2, &cfg.search) {
            TightOutcome::Found(w) => match extend_tight_cycle(&w, &h2, &s2, 2) {
                Ok(mut cert) => {
                    trace.fallbacks.push(Attempt { what, budget: cfg.search.budget, outcome: "found".into() });
                    cert.color = inv(cert.color);
                    done(h, cert, trace)
                }
                Err(e) => fallback(h, trace, cfg, format!("early exit extension: {e}")),
            },
            other => fallback(h, trace, cfg, format!("early exit: color-2 good-pair graph gave {other:?}")),
        };
    }

    let built = if case2 {
        construct_gamma_case2(&h2, &s2, &sel, &classes)
    } else {
        construct_gamma_case1(&h2, &s2, &sel)
    };
    let gamma = match built {
        Ok(g) => g,
        Err(e) => return fallback(h, trace, cfg, e.to_string()),
    };
    trace.subcase = gamma.subcase.clone();
    trace.decisions.push(format!("w order head {:?}, r {:?}, l {:?}", &gamma.w_order[..gamma.w_order.len().min(2)], gamma.r, gamma.l));
    trace.decisions.push(format!("E6' {:?} E6'' {:?} D {:?}", gamma.e6_prime, gamma.e6_double_prime, gamma.d_sets));
    if let Some(w) = gamma.w {
        trace.decisions.push(format!("E7 star centered at {w}"));
    }
    for b in gamma.degree_floor_breaches() {
        trace.breaches.push(format!("degree floor: {b}"));
    }
    let chvatal = chvatal_holds(&gamma.graph.degree_sequence()).unwrap_or(false);
    trace.decisions.push(format!("chvatal condition {}", if chvatal { "holds" } else { "fails" }));
    let cycle = match find_hamiltonian_cycle_with(&gamma.graph, &cfg.search) {
        HamOutcome::Found(c) => c,
        other => {
            if chvatal {
                trace.breaches.push("chvatal condition holds but no cycle was found".into());
            }
            return fallback(h, trace, cfg, format!("auxiliary graph: {other:?}"));
        }
    };
    match extend_to_berge(&gamma, &cycle, &h2) {
        Ok(mut cert) => {
            cert.color = inv(cert.color);
            if !trace.breaches.is_empty() {
                write_reproducer(h, &trace, cfg);
            }
            done(h, cert, trace)
        }
        Err(e) => fallback(h, trace, cfg, e.to_string()),
    }
}

/// Final gate: nothing leaves without passing the verifier.
fn done(h: &ColoredHypergraph, cert: BergeCertificate, mut trace: ConstructionTrace) -> R4Result {
    match verify_berge_certificate(&cert, h, 2) {
        crate::certificate::VerificationReport::Pass => Ok((cert, trace)),
        crate::certificate::VerificationReport::Fail(v) => {
            trace.breaches.push(format!("certificate rejected: {v}"));
            Err(R4Error::Verification(v))
        }
    }
}

/// Records a breach, writes a reproducer, then runs the generic search.
fn fallback(h: &ColoredHypergraph, mut trace: ConstructionTrace, cfg: &R4Config, breach: String) -> R4Result {
    log::warn!("construction breach: {breach}");
    trace.breaches.push(breach);
    write_reproducer(h, &trace, cfg);
    search_only(h, trace, cfg)
}

fn search_only(h: &ColoredHypergraph, mut trace: ConstructionTrace, cfg: &R4Config) -> R4Result {
    match generic_search(h, 2, &cfg.search, &mut trace.fallbacks) {
        GenericOutcome::Found(cert) => done(h, cert, trace),
        GenericOutcome::Unresolved => Err(R4Error::Unresolved(Box::new(trace))),
    }
}

fn write_reproducer(h: &ColoredHypergraph, trace: &ConstructionTrace, cfg: &R4Config) {
    let Some(dir) = &cfg.reproducer_dir else { return };
    use std::hash::{Hash, Hasher};
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    h.colors().hash(&mut hasher);
    let stem = format!("breach-{:016x}", hasher.finish());
    let res = std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(dir.join(format!("{stem}.txt")), h.to_text()))
        .and_then(|_| std::fs::write(dir.join(format!("{stem}.trace.json")), trace.to_json()));
    if let Err(e) = res {
        log::error!("could not write reproducer to {}: {e}", dir.display());
    }
}

/// The pair shadow of `h` (convenience for callers inspecting a trace).
pub fn pair_shadow(h: &ColoredHypergraph) -> Result<ShadowMulticoloring, R4Error> {
    build_shadow(h, 2).map_err(|e| R4Error::InvalidParams(e.to_string()))
}
