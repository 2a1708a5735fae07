//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
//!
//! Left vertices are processed in index order and their neighbors in list
//! order, so results are reproducible for a given adjacency.

/// Incremental matcher: left vertices may be added one at a time.
#[derive(Debug, Clone)]
pub struct Matcher {
    adj: Vec<Vec<usize>>,
    match_left: Vec<Option<usize>>,
    match_right: Vec<Option<usize>>,
    stamp: Vec<u32>,
    epoch: u32,
    size: usize,
}

impl Matcher {
    pub fn new(n_right: usize) -> Self {
        Matcher {
            adj: Vec::new(),
            match_left: Vec::new(),
            match_right: vec![None; n_right],
            stamp: vec![0; n_right],
            epoch: 0,
            size: 0,
        }
    }

    /// Adds a left vertex with the given neighbors and tries to match it.
    /// Returns whether the matching grew.
    pub fn push_left(&mut self, neighbors: Vec<usize>) -> bool {
        self.adj.push(neighbors);
        self.match_left.push(None);
        let left = self.adj.len() - 1;
        self.augment(left)
    }

    /// Tries to find an augmenting path from the unmatched left vertex.
    pub fn augment(&mut self, left: usize) -> bool {
        if self.match_left[left].is_some() {
            return false;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let found = self.dfs(left);
        if found {
            self.size += 1;
        }
        found
    }

    fn dfs(&mut self, left: usize) -> bool {
        for i in 0..self.adj[left].len() {
            let right = self.adj[left][i];
            if self.stamp[right] == self.epoch {
                continue;
            }
            self.stamp[right] = self.epoch;
            let free = match self.match_right[right] {
                None => true,
                Some(other) => self.dfs(other),
            };
            if free {
                self.match_right[right] = Some(left);
                self.match_left[left] = Some(right);
                return true;
            }
        }
        false
    }

    /// Makes room for right vertices `0..n_right`.
    pub fn grow_right(&mut self, n_right: usize) {
        if n_right > self.match_right.len() {
            self.match_right.resize(n_right, None);
            self.stamp.resize(n_right, 0);
        }
    }

    pub fn right_count(&self) -> usize {
        self.match_right.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_perfect(&self) -> bool {
        self.size == self.adj.len()
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.match_left
    }
}

/// Maximum matching of the bipartite graph given by `adj` (left vertex ->
/// right neighbors). Returns the partner of each left vertex.
pub fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut m = Matcher::new(n_right);
    for nb in adj {
        m.push_left(nb.clone());
    }
    m.match_left
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest matching by trying every injective assignment (tiny graphs).
    fn brute_max(adj: &[Vec<usize>], n_right: usize) -> usize {
        fn go(i: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if i == adj.len() {
                return 0;
            }
            let mut best = go(i + 1, adj, used);
            for &r in &adj[i] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(i + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; n_right])
    }

    fn check_valid(adj: &[Vec<usize>], m: &[Option<usize>]) {
        let mut used = std::collections::HashSet::new();
        for (l, r) in m.iter().enumerate() {
            if let Some(r) = r {
                assert!(adj[l].contains(r));
                assert!(used.insert(*r));
            }
        }
    }

    #[test]
    fn private_neighbors_give_identity() {
        let adj: Vec<Vec<usize>> = (0..5).map(|i| vec![i]).collect();
        let m = max_bipartite_matching(&adj, 5);
        assert_eq!(m, (0..5).map(Some).collect::<Vec<_>>());
    }

    #[test]
    fn k43_positions() {
        // Positions {0,1},{1,2},{2,3},{3,0}; triples by colex rank:
        // 0={0,1,2} 1={0,1,3} 2={0,2,3} 3={1,2,3}.
        let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let pairs = [[0, 1], [1, 2], [2, 3], [3, 0]];
        let adj: Vec<Vec<usize>> = pairs
            .iter()
            .map(|p| (0..4).filter(|&k| p.iter().all(|v| triples[k].contains(v))).collect())
            .collect();
        assert!(adj.iter().all(|nb| nb.len() == 2));
        let m = max_bipartite_matching(&adj, 4);
        check_valid(&adj, &m);
        assert!(m.iter().all(|x| x.is_some()));
        assert_eq!(brute_max(&adj, 4), 4);
    }

    #[test]
    fn empty_position_blocks_perfection() {
        let adj = vec![vec![0], vec![], vec![1]];
        let m = max_bipartite_matching(&adj, 2);
        assert_eq!(m.iter().flatten().count(), 2);
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let nl = rng.random_range(0..7);
            let nr = rng.random_range(1..7);
            let adj: Vec<Vec<usize>> = (0..nl)
                .map(|_| (0..nr).filter(|_| rng.random_bool(0.35)).collect())
                .collect();
            let m = max_bipartite_matching(&adj, nr);
            check_valid(&adj, &m);
            assert_eq!(m.iter().flatten().count(), brute_max(&adj, nr));
        }
    }
}
