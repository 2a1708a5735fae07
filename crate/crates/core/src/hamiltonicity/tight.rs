//! Monochromatic Hamiltonian tight cycles in the shadow multi-coloring.

use crate::certificate::TightCycleWitness;
use crate::shadow::ShadowMulticoloring;
use crate::subset::{rank_sorted, Subsets};

use super::cycle::{find_hamiltonian_cycle_with, Budget, HamOutcome, SearchConfig};
use super::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TightOutcome {
    Found(TightCycleWitness),
    NotFound,
    BudgetExhausted,
}

impl TightOutcome {
    pub fn found(self) -> Option<TightCycleWitness> {
        match self {
            TightOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Graph of the pairs for which `color` is 2-good.
pub fn good_pair_graph(s: &ShadowMulticoloring, color: u8) -> SimpleGraph {
    assert_eq!(s.t(), 2, "good-pair graph needs a pair shadow");
    let mut g = SimpleGraph::new(s.n());
    for (k, pair) in Subsets::new(s.n(), 2).enumerate() {
        if s.is_good_rank(k, color) {
            g.add_edge(pair[0], pair[1]);
        }
    }
    g
}

pub fn find_mono_ham_tight_cycle(s: &ShadowMulticoloring, color: u8, budget: u64) -> TightOutcome {
    find_mono_ham_tight_cycle_with(s, color, &SearchConfig::with_budget(budget))
}

pub fn find_mono_ham_tight_cycle_with(s: &ShadowMulticoloring, color: u8, cfg: &SearchConfig) -> TightOutcome {
    if color == 0 || color as usize > s.c() || s.n() < 3 {
        return TightOutcome::NotFound;
    }
    if s.t() == 2 {
        return match find_hamiltonian_cycle_with(&good_pair_graph(s, color), cfg) {
            HamOutcome::Found(core) => TightOutcome::Found(TightCycleWitness { color, core }),
            HamOutcome::NotFound => TightOutcome::NotFound,
            HamOutcome::BudgetExhausted => TightOutcome::BudgetExhausted,
        };
    }
    let mut budget = Budget::new(cfg.budget);
    match tight_backtrack(s, color, &mut budget) {
        Some(Some(core)) => TightOutcome::Found(TightCycleWitness { color, core }),
        Some(None) => TightOutcome::NotFound,
        None => TightOutcome::BudgetExhausted,
    }
}

/// Depth-first search over core sequences starting at vertex 0. Every new
/// vertex must complete a good window with the `t - 1` before it; the wrap
/// windows are checked once the sequence is full. `None` = out of budget.
fn tight_backtrack(s: &ShadowMulticoloring, color: u8, budget: &mut Budget) -> Option<Option<Vec<usize>>> {
    let (n, t) = (s.n(), s.t());
    if n < t {
        return Some(None);
    }
    let good = |core: &[usize], from: usize, win: &mut Vec<usize>| {
        win.clear();
        win.extend((0..t).map(|j| core[(from + j) % n]));
        win.sort_unstable();
        s.is_good_rank(rank_sorted(win) as usize, color)
    };
    let mut win = Vec::with_capacity(t);
    let mut core = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let mut next = vec![1usize];
    loop {
        let depth = core.len() - 1;
        if core.len() == n {
            if (n - t + 1..n).all(|i| good(&core, i, &mut win)) {
                return Some(Some(core));
            }
        } else {
            let mut advanced = false;
            while next[depth] < n {
                let v = next[depth];
                next[depth] += 1;
                if used[v] {
                    continue;
                }
                if !budget.charge() {
                    return None;
                }
                core.push(v);
                if core.len() >= t && !good(&core, core.len() - t, &mut win) {
                    core.pop();
                    continue;
                }
                used[v] = true;
                next.push(1);
                advanced = true;
                break;
            }
            if advanced {
                continue;
            }
        }
        if depth == 0 {
            return Some(None);
        }
        let v = core.pop().unwrap();
        used[v] = false;
        next.pop();
    }
}
