//! Colex ranking of k-subsets of `{0, .., n-1}`.
//!
//! The rank of a sorted set `s_0 < s_1 < .. < s_{k-1}` is `sum_i C(s_i, i+1)`,
//! which enumerates all k-subsets of `{0, .., n-1}` as `0..C(n, k)` for every
//! `n` at once. Colorings store one entry per r-set at its colex rank.

use thiserror::Error;

/// Largest `n` covered by the precomputed binomial table.
pub const MAX_N: usize = 128;

/// Saturated entry in the binomial table; any coefficient that does not fit
/// in a `u64` reads as this value.
pub const SATURATED: u64 = u64::MAX;

const fn build_binomials() -> [[u64; MAX_N + 1]; MAX_N + 1] {
    let mut table = [[0u64; MAX_N + 1]; MAX_N + 1];
    let mut n = 0;
    while n <= MAX_N {
        table[n][0] = 1;
        let mut k = 1;
        while k <= n {
            table[n][k] = table[n - 1][k - 1].saturating_add(table[n - 1][k]);
            k += 1;
        }
        n += 1;
    }
    table
}

static BINOMIALS: [[u64; MAX_N + 1]; MAX_N + 1] = build_binomials();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("subset is not strictly increasing at position {position}")]
    Unsorted { position: usize },
    #[error("rank {rank} out of range: C({n}, {size}) = {count}")]
    RankOutOfRange { rank: u64, n: usize, size: usize, count: u64 },
    #[error("n = {n} exceeds the supported maximum {MAX_N}")]
    TooLarge { n: usize },
}

/// `C(n, k)`, or 0 when `k > n`. Saturates at `u64::MAX` for huge values.
#[inline]
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else if n <= MAX_N {
        BINOMIALS[n][k]
    } else {
        // Outside the table: multiplicative formula with saturation.
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
            if acc > u64::MAX as u128 {
                return SATURATED;
            }
        }
        acc as u64
    }
}

/// Colex rank of a sorted subset without validation. Callers must guarantee
/// the set is strictly increasing with every element `< MAX_N`.
#[inline]
pub fn rank_sorted(s: &[usize]) -> u64 {
    let mut rank = 0u64;
    for (i, &v) in s.iter().enumerate() {
        rank += BINOMIALS[v][i + 1];
    }
    rank
}

/// Colex rank of an unsorted set of distinct vertices.
#[inline]
pub fn rank_unsorted(s: &[usize]) -> u64 {
    let mut buf = [0usize; 16];
    if s.len() <= buf.len() {
        let b = &mut buf[..s.len()];
        b.copy_from_slice(s);
        b.sort_unstable();
        rank_sorted(b)
    } else {
        let mut v = s.to_vec();
        v.sort_unstable();
        rank_sorted(&v)
    }
}

/// Validated colex rank of `s` as a subset of `{0, .., n-1}`.
pub fn rank_subset(s: &[usize], n: usize) -> Result<u64, SubsetError> {
    if n > MAX_N {
        return Err(SubsetError::TooLarge { n });
    }
    for (i, &v) in s.iter().enumerate() {
        if v >= n {
            return Err(SubsetError::OutOfRange { vertex: v, n });
        }
        if i > 0 && s[i - 1] >= v {
            return Err(SubsetError::Unsorted { position: i });
        }
    }
    Ok(rank_sorted(s))
}

/// Inverse of [`rank_subset`]: the sorted `size`-subset with colex rank `rank`.
pub fn unrank_subset(rank: u64, n: usize, size: usize) -> Result<Vec<usize>, SubsetError> {
    if n > MAX_N {
        return Err(SubsetError::TooLarge { n });
    }
    let count = binomial(n, size);
    if rank >= count {
        return Err(SubsetError::RankOutOfRange { rank, n, size, count });
    }
    let mut out = vec![0usize; size];
    unrank_into(rank, n, &mut out);
    Ok(out)
}

/// Writes the subset with colex rank `rank` into `out` (whose length is the
/// subset size). The rank must be in range.
pub fn unrank_into(mut rank: u64, n: usize, out: &mut [usize]) {
    let mut hi = n;
    for i in (0..out.len()).rev() {
        // Largest c < hi with C(c, i+1) <= rank.
        let k = i + 1;
        let mut c = hi - 1;
        while BINOMIALS[c][k] > rank {
            c -= 1;
        }
        out[i] = c;
        rank -= BINOMIALS[c][k];
        hi = c;
    }
}

/// Advances a sorted k-subset of `{0, .., n-1}` to its colex successor.
/// Returns `false` (leaving `s` unspecified) once the last subset is passed.
#[inline]
pub fn next_colex(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { n };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (j, slot) in s.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Iterator over all k-subsets of `{0, .., n-1}` in colex order.
pub struct Subsets {
    current: Vec<usize>,
    n: usize,
    done: bool,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets {
            current: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if self.current.is_empty() || !next_colex(&mut self.current, self.n) {
            self.done = true;
        }
        Some(out)
    }
}

/// Calls `f` with every superset of the sorted set `base` of size `size`
/// inside `{0, .., n-1}`, passing each superset sorted. Supersets are
/// produced in colex order of the added vertices.
pub fn for_each_superset(base: &[usize], size: usize, n: usize, mut f: impl FnMut(&[usize])) {
    debug_assert!(base.len() <= size);
    let extra = size - base.len();
    let free: Vec<usize> = (0..n).filter(|v| !base.contains(v)).collect();
    if extra > free.len() {
        return;
    }
    let mut pick: Vec<usize> = (0..extra).collect();
    let mut buf = vec![0usize; size];
    loop {
        let mut bi = 0;
        let mut pi = 0;
        for slot in buf.iter_mut() {
            let take_base = pi >= extra || (bi < base.len() && base[bi] < free[pick[pi]]);
            if take_base {
                *slot = base[bi];
                bi += 1;
            } else {
                *slot = free[pick[pi]];
                pi += 1;
            }
        }
        f(&buf);
        if extra == 0 || !next_colex(&mut pick, free.len()) {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent enumeration of k-subsets in colex order: sort all subsets
    /// (as bitmasks) by their reversed element list.
    fn colex_by_enumeration(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        all
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_subset(&[0, 1, 2], 5), Ok(0));
        assert_eq!(rank_subset(&[2, 3, 4], 5), Ok(9));
        assert_eq!(binomial(5, 3) - 1, 9);
        // Position of {0,1,3} in the enumerated colex order.
        let order = colex_by_enumeration(5, 3);
        let pos = order.iter().position(|s| s == &vec![0, 1, 3]).unwrap();
        assert_eq!(pos, 1);
        assert_eq!(rank_subset(&[0, 1, 3], 5), Ok(1));
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank_subset(0, 5, 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(unrank_subset(9, 5, 3).unwrap(), vec![2, 3, 4]);
        assert_eq!(unrank_subset(1, 5, 3).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn errors() {
        assert_eq!(rank_subset(&[1, 0], 5), Err(SubsetError::Unsorted { position: 1 }));
        assert_eq!(rank_subset(&[1, 1], 5), Err(SubsetError::Unsorted { position: 1 }));
        assert_eq!(rank_subset(&[0, 5], 5), Err(SubsetError::OutOfRange { vertex: 5, n: 5 }));
        assert!(matches!(unrank_subset(10, 5, 3), Err(SubsetError::RankOutOfRange { .. })));
    }

    #[test]
    fn exhaustive_round_trip_matches_enumeration() {
        for n in 0..=12 {
            for k in 0..=6.min(n) {
                let order = colex_by_enumeration(n, k);
                assert_eq!(order.len() as u64, binomial(n, k));
                for (i, s) in order.iter().enumerate() {
                    assert_eq!(rank_subset(s, n).unwrap(), i as u64, "n={n} k={k} s={s:?}");
                    assert_eq!(&unrank_subset(i as u64, n, k).unwrap(), s);
                }
                let iterated: Vec<_> = Subsets::new(n, k).collect();
                assert_eq!(iterated, order);
            }
        }
    }

    #[test]
    fn binomial_table_values() {
        assert_eq!(binomial(85, 4), 2_024_785);
        assert_eq!(binomial(83, 2), 3_403);
        assert_eq!(binomial(85, 3), 98_770);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(128, 64), SATURATED);
        assert_eq!(binomial(200, 2), 19_900);
    }

    #[test]
    fn supersets_are_complete_and_sorted() {
        let mut seen = Vec::new();
        for_each_superset(&[1, 4], 4, 7, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len() as u64, binomial(5, 2));
        for s in &seen {
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.contains(&1) && s.contains(&4));
        }
        let mut dedup = seen.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), seen.len());
    }
}
