//! Shadow t-graph of a colored `K_n^r`: for every t-set, how many edges of
//! each color contain it, and which colors are t-good (at least `r - t + 1`
//! containing edges).

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::{ColoredHypergraph, Params};
use crate::subset::{binomial, next_colex, rank_sorted, unrank_into, Subsets};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("tightness t = {t} outside 2..={r}")]
    Tightness { t: usize, r: usize },
    #[error("color {color} outside 1..={c}")]
    Color { color: u8, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowMulticoloring {
    params: Params,
    /// `counts[rank * c + (color - 1)]`.
    counts: Vec<u32>,
    /// Bit `color - 1` set iff the color is t-good for the t-set.
    good: Vec<u64>,
}

/// Index tuples of all t-subsets of positions `0..r`.
fn position_subsets(r: usize, t: usize) -> Vec<Vec<usize>> {
    Subsets::new(r, t).collect()
}

/// Edges processed per parallel work item.
const CHUNK: usize = 1 << 14;

pub fn build_shadow(h: &ColoredHypergraph, t: usize) -> Result<ShadowMulticoloring, ShadowError> {
    let (n, r, c) = (h.n(), h.r(), h.c());
    if t < 2 || t > r {
        return Err(ShadowError::Tightness { t, r });
    }
    let tsets = binomial(n, t) as usize;
    let picks = position_subsets(r, t);
    let total = h.edge_count();
    let chunks = total.div_ceil(CHUNK);

    let accumulate = |mut acc: Vec<u32>, chunk: usize| {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut e = vec![0usize; r];
        unrank_into(start as u64, n, &mut e);
        let mut sub = vec![0usize; t];
        for rank in start..end {
            let color = h.color_at(rank) as usize - 1;
            for p in &picks {
                for (slot, &i) in sub.iter_mut().zip(p) {
                    *slot = e[i];
                }
                let k = rank_sorted(&sub) as usize;
                acc[k * c + color] += 1;
            }
            if rank + 1 < end {
                next_colex(&mut e, n);
            }
        }
        acc
    };
    let counts = (0..chunks)
        .into_par_iter()
        .fold(|| vec![0u32; tsets * c], accumulate)
        .reduce(
            || vec![0u32; tsets * c],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x = x.saturating_add(*y);
                }
                a
            },
        );

    let threshold = (r - t + 1) as u32;
    let good = counts
        .chunks_exact(c)
        .map(|row| good_mask(row, threshold))
        .collect();
    Ok(ShadowMulticoloring { params: h.params(t), counts, good })
}

fn good_mask(row: &[u32], threshold: u32) -> u64 {
    row.iter()
        .enumerate()
        .filter(|(_, &k)| k >= threshold)
        .fold(0u64, |m, (i, _)| m | 1 << i)
}

impl ShadowMulticoloring {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn r(&self) -> usize {
        self.params.r
    }

    pub fn t(&self) -> usize {
        self.params.t
    }

    pub fn c(&self) -> usize {
        self.params.c
    }

    /// `r - t + 1`: how many edges of a color make it t-good.
    pub fn threshold(&self) -> u32 {
        (self.params.r - self.params.t + 1) as u32
    }

    /// Number of t-sets.
    pub fn len(&self) -> usize {
        self.good.len()
    }

    pub fn is_empty(&self) -> bool {
        self.good.is_empty()
    }

    pub fn counts_at(&self, rank: usize) -> &[u32] {
        let c = self.params.c;
        &self.counts[rank * c..(rank + 1) * c]
    }

    pub fn count(&self, rank: usize, color: u8) -> u32 {
        self.counts[rank * self.params.c + color as usize - 1]
    }

    /// Good colors of the t-set at `rank`, as a mask (bit `i - 1` for color `i`).
    #[inline]
    pub fn goodset_at(&self, rank: usize) -> u64 {
        self.good[rank]
    }

    /// Good colors of a t-set given in any order.
    #[inline]
    pub fn goodset_of(&self, set: &[usize]) -> u64 {
        self.good[crate::subset::rank_unsorted(set) as usize]
    }

    #[inline]
    pub fn is_good_rank(&self, rank: usize, color: u8) -> bool {
        color >= 1 && self.good[rank] >> (color - 1) & 1 == 1
    }

    #[inline]
    pub fn is_good(&self, set: &[usize], color: u8) -> bool {
        self.is_good_rank(crate::subset::rank_unsorted(set) as usize, color)
    }

    /// Pair shorthand for t = 2.
    #[inline]
    pub fn pair_good(&self, u: usize, v: usize, color: u8) -> bool {
        debug_assert_eq!(self.params.t, 2);
        self.is_good(&[u, v], color)
    }

    /// `S_i`: ranks of the t-sets for which color `i` is not t-good.
    pub fn bad_edge_set(&self, color: u8) -> Result<Vec<u64>, ShadowError> {
        self.check_color(color)?;
        Ok((0..self.good.len())
            .filter(|&k| !self.is_good_rank(k, color))
            .map(|k| k as u64)
            .collect())
    }

    /// Number of t-sets for which `color` is good.
    pub fn good_count(&self, color: u8) -> usize {
        let bit = 1u64 << (color - 1);
        self.good.iter().filter(|&&m| m & bit != 0).count()
    }

    fn check_color(&self, color: u8) -> Result<(), ShadowError> {
        if color == 0 || color as usize > self.params.c {
            Err(ShadowError::Color { color, c: self.params.c })
        } else {
            Ok(())
        }
    }

    /// Updates counts after the r-edge `edge` changes from color `from` to
    /// `to`. Only the `C(r, t)` t-sets inside the edge are touched. The caller
    /// is responsible for recoloring the hypergraph itself.
    pub fn apply_recolor(&mut self, edge: &[usize], from: u8, to: u8) -> Result<(), ShadowError> {
        self.check_color(from)?;
        self.check_color(to)?;
        if from == to {
            return Ok(());
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        let (c, t) = (self.params.c, self.params.t);
        let threshold = self.threshold();
        let mut sub = vec![0usize; t];
        for p in Subsets::new(e.len(), t) {
            for (slot, &i) in sub.iter_mut().zip(&p) {
                *slot = e[i];
            }
            let k = rank_sorted(&sub) as usize;
            let row = &mut self.counts[k * c..(k + 1) * c];
            row[from as usize - 1] = row[from as usize - 1].saturating_sub(1);
            row[to as usize - 1] = row[to as usize - 1].saturating_add(1);
            self.good[k] = good_mask(row, threshold);
        }
        Ok(())
    }

    /// Line-oriented dump: one line per t-set in colex order.
    pub fn dump(&self) -> String {
        let Params { n, r, t, c } = self.params;
        let mut out = String::new();
        out.push_str(DUMP_HEADER);
        out.push('\n');
        let _ = writeln!(out, "r={r} n={n} c={c} t={t}");
        for (k, set) in Subsets::new(n, t).enumerate() {
            let verts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            let counts: Vec<String> = self.counts_at(k).iter().map(|v| v.to_string()).collect();
            let good = mask_to_colors(self.good[k]);
            let good = if good.is_empty() {
                "-".to_string()
            } else {
                good.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "{} : {} : {}", verts.join(" "), counts.join(" "), good);
        }
        out
    }
}

pub const DUMP_HEADER: &str = "berge-shadow v1";

/// Colors (1-based, ascending) present in a good-color mask.
pub fn mask_to_colors(mask: u64) -> Vec<u8> {
    (0..64u8).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}
