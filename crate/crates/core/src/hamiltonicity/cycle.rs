//! Hamiltonian cycle search: a seeded rotation-extension heuristic followed
//! by exhaustive backtracking, both charged to one node-expansion budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{iter_bits, SimpleGraph};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamOutcome {
    Found(Vec<usize>),
    /// Exhaustive search completed without finding a cycle.
    NotFound,
    BudgetExhausted,
}

impl HamOutcome {
    pub fn found(self) -> Option<Vec<usize>> {
        match self {
            HamOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node expansions allowed across heuristic and exhaustive phases.
    pub budget: u64,
    pub seed: u64,
    /// Rotation-extension restarts before falling back to backtracking.
    pub restarts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, seed: 0, restarts: 4 }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig { budget, ..Self::default() }
    }
}

pub(crate) struct Budget {
    left: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { left: limit }
    }

    /// Takes one unit; `false` once the budget is gone.
    #[inline]
    pub(crate) fn charge(&mut self) -> bool {
        if self.left == 0 {
            false
        } else {
            self.left -= 1;
            true
        }
    }
}

pub fn find_hamiltonian_cycle(g: &SimpleGraph, budget: u64) -> HamOutcome {
    find_hamiltonian_cycle_with(g, &SearchConfig::with_budget(budget))
}

pub fn find_hamiltonian_cycle_with(g: &SimpleGraph, cfg: &SearchConfig) -> HamOutcome {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) || !g.is_connected() {
        return HamOutcome::NotFound;
    }
    let mut budget = Budget::new(cfg.budget);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let steps = 8 * n * n;
    for _ in 0..cfg.restarts {
        match rotation_extension(g, &mut rng, steps, &mut budget) {
            Ok(Some(cycle)) => return HamOutcome::Found(cycle),
            Ok(None) => {}
            Err(Exhausted) => return HamOutcome::BudgetExhausted,
        }
    }
    match backtrack(g, &mut budget) {
        Ok(Some(cycle)) => HamOutcome::Found(cycle),
        Ok(None) => HamOutcome::NotFound,
        Err(Exhausted) => HamOutcome::BudgetExhausted,
    }
}

pub(crate) struct Exhausted;

/// Randomized Pósa rotation-extension. Returns `Ok(None)` when the step cap
/// is reached without closing a Hamiltonian cycle.
fn rotation_extension(
    g: &SimpleGraph,
    rng: &mut ChaCha8Rng,
    steps: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, Exhausted> {
    let n = g.n();
    let words = g.words();
    let mut unvisited = vec![0u64; words];
    for v in 0..n {
        unvisited[v / 64] |= 1 << (v % 64);
    }
    let take = |set: &mut [u64], v: usize| set[v / 64] &= !(1 << (v % 64));
    let start = rng.random_range(0..n);
    let mut path = vec![start];
    take(&mut unvisited, start);
    let mut scratch = vec![0u64; words];
    for _ in 0..steps {
        if !budget.charge() {
            return Err(Exhausted);
        }
        let end = *path.last().unwrap();
        for (s, (a, b)) in scratch.iter_mut().zip(g.row(end).iter().zip(&unvisited)) {
            *s = a & b;
        }
        // Extend towards the unvisited neighbor with fewest unvisited neighbors.
        let mut best: Option<(usize, usize)> = None;
        for v in iter_bits(&scratch) {
            let free: usize = g.row(v).iter().zip(&unvisited).map(|(a, b)| (a & b).count_ones() as usize).sum();
            if best.is_none_or(|(_, f)| free < f || (free == f && rng.random_bool(0.5))) {
                best = Some((v, free));
            }
        }
        if let Some((v, _)) = best {
            path.push(v);
            take(&mut unvisited, v);
            continue;
        }
        if path.len() == n && g.has_edge(end, path[0]) {
            return Ok(Some(path));
        }
        // Rotate: pick a path neighbor path[i] of the end (not its predecessor)
        // and reverse the segment after it.
        let len = path.len();
        let pivots: Vec<usize> = (0..len.saturating_sub(2)).filter(|&i| g.has_edge(end, path[i])).collect();
        if pivots.is_empty() {
            return Ok(None);
        }
        let i = pivots[rng.random_range(0..pivots.len())];
        path[i + 1..].reverse();
    }
    Ok(None)
}

/// Exhaustive search from the lowest-degree vertex. Neighbors are tried by
/// ascending degree, then id; branches leaving an unvisited vertex with
/// fewer than two usable neighbors are cut.
fn backtrack(g: &SimpleGraph, budget: &mut Budget) -> Result<Option<Vec<usize>>, Exhausted> {
    let n = g.n();
    let words = g.words();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let start = (0..n).min_by_key(|&v| (deg[v], v)).unwrap();
    let order: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut nb: Vec<usize> = g.neighbors(u).collect();
            nb.sort_by_key(|&v| (deg[v], v));
            nb
        })
        .collect();

    let mut unvisited = vec![0u64; words];
    for v in 0..n {
        if v != start {
            unvisited[v / 64] |= 1 << (v % 64);
        }
    }
    let mut path = vec![start];
    let mut cursor = vec![0usize];
    let mut usable = vec![0u64; words];

    while let Some(&end) = path.last() {
        let depth = path.len() - 1;
        if path.len() == n {
            if g.has_edge(end, start) {
                return Ok(Some(path));
            }
        } else if let Some(&v) = order[end][cursor[depth]..].first() {
            cursor[depth] += 1;
            if unvisited[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            if !budget.charge() {
                return Err(Exhausted);
            }
            unvisited[v / 64] &= !(1 << (v % 64));
            // Every remaining vertex must keep two usable neighbors: unvisited
            // ones, the new end, or the start (which closes the cycle).
            usable.copy_from_slice(&unvisited);
            usable[v / 64] |= 1 << (v % 64);
            usable[start / 64] |= 1 << (start % 64);
            let dead = iter_bits(&unvisited).any(|u| {
                let k: u32 = g.row(u).iter().zip(&usable).map(|(a, b)| (a & b).count_ones()).sum();
                k < 2
            });
            if dead {
                unvisited[v / 64] |= 1 << (v % 64);
                continue;
            }
            path.push(v);
            cursor.push(0);
            continue;
        }
        // Exhausted this level: backtrack.
        let v = path.pop().unwrap();
        cursor.pop();
        if v != start {
            unvisited[v / 64] |= 1 << (v % 64);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOutcome {
    Found(Vec<usize>),
    NotFound,
    BudgetExhausted,
}

/// Hamiltonian path whose first vertex satisfies `start_ok` and whose last
/// vertex satisfies `end_ok`.
///
/// Reduces to a cycle search: three gadget vertices `s - m - e` are added,
/// `s` joined to every allowed start and `e` to every allowed end.
pub fn find_hamiltonian_path(
    g: &SimpleGraph,
    start_ok: impl Fn(usize) -> bool,
    end_ok: impl Fn(usize) -> bool,
    cfg: &SearchConfig,
) -> PathOutcome {
    let n = g.n();
    if n == 0 {
        return PathOutcome::NotFound;
    }
    let (s, m, e) = (n, n + 1, n + 2);
    let mut aux = SimpleGraph::new(n + 3);
    for (u, v) in g.edges() {
        aux.add_edge(u, v);
    }
    for v in 0..n {
        if start_ok(v) {
            aux.add_edge(s, v);
        }
        if end_ok(v) {
            aux.add_edge(e, v);
        }
    }
    aux.add_edge(s, m);
    aux.add_edge(m, e);
    match find_hamiltonian_cycle_with(&aux, cfg) {
        HamOutcome::Found(mut cycle) => {
            let at = cycle.iter().position(|&v| v == s).unwrap();
            cycle.rotate_left(at);
            if cycle[1] != m {
                cycle[1..].reverse();
            }
            debug_assert_eq!(&cycle[..3], &[s, m, e]);
            let mut path: Vec<usize> = cycle[3..].to_vec();
            path.reverse();
            PathOutcome::Found(path)
        }
        HamOutcome::NotFound => PathOutcome::NotFound,
        HamOutcome::BudgetExhausted => PathOutcome::BudgetExhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let k5 = SimpleGraph::complete(5);
        let c = find_hamiltonian_cycle(&k5, 1000).found().unwrap();
        assert!(k5.is_hamiltonian_cycle(&c));

        let c6 = SimpleGraph::cycle(6);
        let c = find_hamiltonian_cycle(&c6, 1000).found().unwrap();
        assert!(c6.is_hamiltonian_cycle(&c));

        assert_eq!(find_hamiltonian_cycle(&SimpleGraph::petersen(), DEFAULT_BUDGET), HamOutcome::NotFound);
        assert_eq!(find_hamiltonian_cycle(&SimpleGraph::complete(2), 10), HamOutcome::NotFound);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        // Petersen needs real backtracking to refute.
        let out = find_hamiltonian_cycle(&SimpleGraph::petersen(), 5);
        assert_eq!(out, HamOutcome::BudgetExhausted);
    }

    #[test]
    fn backtracking_alone_finds_cycles() {
        let g = SimpleGraph::cycle(9);
        let cfg = SearchConfig { restarts: 0, ..SearchConfig::default() };
        let c = find_hamiltonian_cycle_with(&g, &cfg).found().unwrap();
        assert!(g.is_hamiltonian_cycle(&c));
    }

    #[test]
    fn large_dense_graph_is_instant() {
        let mut g = SimpleGraph::complete(100);
        for v in 1..50 {
            g.remove_edge(0, v);
        }
        let c = find_hamiltonian_cycle(&g, 100_000).found().unwrap();
        assert!(g.is_hamiltonian_cycle(&c));
    }

    #[test]
    fn path_with_endpoints() {
        // Path graph 0-1-2-3-4: the only Hamiltonian path runs end to end.
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let cfg = SearchConfig::default();
        match find_hamiltonian_path(&g, |v| v == 4, |v| v == 0, &cfg) {
            PathOutcome::Found(p) => assert_eq!(p, vec![4, 3, 2, 1, 0]),
            other => panic!("{other:?}"),
        }
        assert_eq!(find_hamiltonian_path(&g, |v| v == 2, |_| true, &cfg), PathOutcome::NotFound);
        let k4 = SimpleGraph::complete(4);
        match find_hamiltonian_path(&k4, |v| v == 1, |v| v == 2, &cfg) {
            PathOutcome::Found(p) => {
                assert!(k4.is_hamiltonian_path(&p));
                assert_eq!((p[0], p[3]), (1, 2));
            }
            other => panic!("{other:?}"),
        }
    }
}
