//! Generic searches for monochromatic Hamiltonian Berge-cycles.
//!
//! * [`shadow_search`]: a monochromatic Hamiltonian tight cycle of the shadow
//!   multi-coloring, extended by matching.
//! * [`berge_dfs`]: depth-first search over core sequences that keeps one
//!   incremental matching per color and prunes when every color fails.
//!   Exhaustive when unbudgeted; the brute-force oracle builds on it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::berge_extract::extend_tight_cycle;
use crate::certificate::{verify_berge_certificate, BergeCertificate};
use crate::hamiltonicity::{find_mono_ham_tight_cycle_with, SearchConfig, TightOutcome};
use crate::hypergraph::ColoredHypergraph;
use crate::matching::Matcher;
use crate::shadow::{build_shadow, ShadowMulticoloring};
use crate::subset::{for_each_superset, rank_sorted, unrank_subset};

/// One bounded search step, as recorded in traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub what: String,
    pub budget: u64,
    pub outcome: String,
}

/// Colors by decreasing number of good t-sets, then decreasing edge count,
/// then ascending label.
pub fn canonical_color_order(h: &ColoredHypergraph, s: &ShadowMulticoloring) -> Vec<u8> {
    let hist = h.histogram();
    let mut colors: Vec<u8> = (1..=h.c() as u8).collect();
    colors.sort_by_key(|&k| (std::cmp::Reverse(s.good_count(k)), std::cmp::Reverse(hist[k as usize]), k));
    colors
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShadowSearch {
    Found(BergeCertificate),
    /// Every color was searched exhaustively without a tight cycle.
    NoTightCycle,
    /// At least one color ran out of budget.
    Exhausted,
}

/// Tries every color (canonical order) for a shadow tight cycle and extends
/// the first one found.
pub fn shadow_search(
    h: &ColoredHypergraph,
    s: &ShadowMulticoloring,
    cfg: &SearchConfig,
    log: &mut Vec<Attempt>,
) -> ShadowSearch {
    let t = s.t();
    let mut exhausted = false;
    for color in canonical_color_order(h, s) {
        let what = format!("shadow-tight-cycle color={color} t={t}");
        match find_mono_ham_tight_cycle_with(s, color, cfg) {
            TightOutcome::Found(w) => match extend_tight_cycle(&w, h, s, t) {
                Ok(cert) => {
                    log.push(Attempt { what, budget: cfg.budget, outcome: "found".into() });
                    return ShadowSearch::Found(cert);
                }
                Err(e) => {
                    log::error!("extension of a validated witness failed: {e}");
                    log.push(Attempt { what, budget: cfg.budget, outcome: format!("extension-failed: {e}") });
                }
            },
            TightOutcome::NotFound => log.push(Attempt { what, budget: cfg.budget, outcome: "not-found".into() }),
            TightOutcome::BudgetExhausted => {
                exhausted = true;
                log.push(Attempt { what, budget: cfg.budget, outcome: "budget-exhausted".into() });
            }
        }
    }
    if exhausted {
        ShadowSearch::Exhausted
    } else {
        ShadowSearch::NoTightCycle
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DfsOutcome {
    Found(BergeCertificate),
    /// The full (canonicalized) search space was explored.
    ProvenNone,
    BudgetExhausted,
}

/// Depth-first search over core sequences `v_1 = 0, v_2 < v_n` (every cycle
/// has such a rotation/reflection), restricted to `colors`. Each color keeps
/// an incremental matching of positions to distinct edges; a prefix is cut
/// when no color can still match all of its windows. `budget` counts
/// pushed vertices; `None` means unlimited.
pub fn berge_dfs(h: &ColoredHypergraph, t: usize, colors: &[u8], budget: Option<u64>) -> DfsOutcome {
    let n = h.n();
    let r = h.r();
    if t < 2 || t > r || colors.is_empty() {
        return DfsOutcome::ProvenNone;
    }
    let mut left = budget.unwrap_or(u64::MAX);
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut by_id: Vec<u64> = Vec::new();
    let slot = |c: u8| colors.iter().position(|&k| k == c);

    // Candidate edges of every window, split by color slot.
    let candidates = |window: &[usize], ids: &mut HashMap<u64, usize>, by_id: &mut Vec<u64>| {
        let mut w = window.to_vec();
        w.sort_unstable();
        let mut per: Vec<Vec<usize>> = vec![Vec::new(); colors.len()];
        for_each_superset(&w, r, n, |e| {
            let rank = rank_sorted(e);
            if let Some(k) = slot(h.color_at(rank as usize)) {
                let next = by_id.len();
                let id = *ids.entry(rank).or_insert_with(|| {
                    by_id.push(rank);
                    next
                });
                per[k].push(id);
            }
        });
        per
    };

    let initial: Vec<Option<Matcher>> = colors.iter().map(|_| Some(Matcher::new(0))).collect();
    let mut core = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let mut states: Vec<Vec<Option<Matcher>>> = vec![initial];
    let mut cursor = vec![1usize];

    loop {
        let depth = core.len() - 1;
        let mut pushed = false;
        while core.len() < n && cursor[depth] < n {
            let v = cursor[depth];
            cursor[depth] += 1;
            if used[v] {
                continue;
            }
            if left == 0 {
                return DfsOutcome::BudgetExhausted;
            }
            left -= 1;
            core.push(v);
            let full = core.len() == n;
            if full && n >= 3 && core[1] > core[n - 1] {
                core.pop();
                continue;
            }
            let mut next = states[depth].clone();
            let mut windows: Vec<usize> = Vec::new();
            if core.len() >= t {
                windows.push(core.len() - t);
            }
            if full {
                windows.extend(n + 1 - t..n);
            }
            for &p in &windows {
                let win: Vec<usize> = (0..t).map(|j| core[(p + j) % n]).collect();
                let per = candidates(&win, &mut ids, &mut by_id);
                for (k, m) in next.iter_mut().enumerate() {
                    if let Some(mm) = m {
                        mm.grow_right(by_id.len());
                        if !mm.push_left(per[k].clone()) {
                            *m = None;
                        }
                    }
                }
            }
            if next.iter().all(Option::is_none) {
                core.pop();
                continue;
            }
            if full {
                let k = next.iter().position(Option::is_some).unwrap();
                let m = next[k].as_ref().unwrap();
                let edges = m
                    .assignment()
                    .iter()
                    .map(|id| unrank_subset(by_id[id.expect("perfect")], n, r).expect("in range"))
                    .collect();
                let cert = BergeCertificate { color: colors[k], core: core.clone(), edges, t };
                debug_assert!(verify_berge_certificate(&cert, h, t).is_pass());
                return DfsOutcome::Found(cert);
            }
            used[v] = true;
            states.push(next);
            cursor.push(1);
            pushed = true;
            break;
        }
        if pushed {
            continue;
        }
        if depth == 0 {
            return DfsOutcome::ProvenNone;
        }
        let v = core.pop().unwrap();
        used[v] = false;
        states.pop();
        cursor.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericOutcome {
    Found(BergeCertificate),
    /// Search ran out of budget (never a claim of non-existence).
    Unresolved,
}

/// Shadow search first, then a budgeted core-sequence search over all colors.
pub fn generic_search(h: &ColoredHypergraph, t: usize, cfg: &SearchConfig, log: &mut Vec<Attempt>) -> GenericOutcome {
    if let Ok(s) = build_shadow(h, t) {
        if let ShadowSearch::Found(cert) = shadow_search(h, &s, cfg, log) {
            return GenericOutcome::Found(cert);
        }
    }
    let colors: Vec<u8> = (1..=h.c() as u8).collect();
    let what = format!("core-sequence-dfs t={t}");
    match berge_dfs(h, t, &colors, Some(cfg.budget)) {
        DfsOutcome::Found(cert) => {
            log.push(Attempt { what, budget: cfg.budget, outcome: "found".into() });
            GenericOutcome::Found(cert)
        }
        DfsOutcome::ProvenNone => {
            log.push(Attempt { what, budget: cfg.budget, outcome: "proven-none".into() });
            GenericOutcome::Unresolved
        }
        DfsOutcome::BudgetExhausted => {
            log.push(Attempt { what, budget: cfg.budget, outcome: "budget-exhausted".into() });
            GenericOutcome::Unresolved
        }
    }
}
