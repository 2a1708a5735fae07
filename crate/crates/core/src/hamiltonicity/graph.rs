use thiserror::Error;

/// Undirected simple graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph { n, words, bits: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Self::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Adds `uv`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new((0..self.n).map(|u| self.degree(u)).collect())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Whether `cycle` visits every vertex exactly once along edges of the graph.
    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        let n = self.n;
        if n < 3 || cycle.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in cycle {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..n).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % n]))
    }

    pub fn is_hamiltonian_path(&self, path: &[usize]) -> bool {
        let n = self.n;
        if path.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in path {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Degrees sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_i` with 1-based `i`.
    pub fn d(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChvatalError {
    #[error("degree condition needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("degree {degree} impossible with {n} vertices")]
    BadDegree { degree: usize, n: usize },
}

/// Chvátal's condition: for every `i` with `1 <= i < n/2`,
/// `d_i > i` or `d_{n-i} >= n - i`. Sufficient for a Hamiltonian cycle.
pub fn chvatal_holds(d: &DegreeSequence) -> Result<bool, ChvatalError> {
    let n = d.len();
    if n < 3 {
        return Err(ChvatalError::TooSmall(n));
    }
    if let Some(&degree) = d.0.iter().find(|&&k| k >= n) {
        return Err(ChvatalError::BadDegree { degree, n });
    }
    Ok((1..).take_while(|&i| 2 * i < n).all(|i| d.d(i) > i || d.d(n - i) >= n - i))
}

/// The first index `i` violating Chvátal's condition, if any.
pub fn chvatal_violation(d: &DegreeSequence) -> Option<usize> {
    let n = d.len();
    (1..).take_while(|&i| 2 * i < n).find(|&i| !(d.d(i) > i || d.d(n - i) >= n - i))
}
