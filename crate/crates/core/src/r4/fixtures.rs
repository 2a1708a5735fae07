//! Colorings of `K_n^4` with a prescribed pair-shadow profile at one vertex,
//! used to drive the pivot construction into specific sub-cases.
//!
//! Vertex 0 is the pivot `x`. Its neighbors are split into `T` (pairs good
//! only in colors 2, 3), `P` (1, 2), `Q` (1, 3) and `R` (all three); every
//! other pair is left to a random background, which makes all other
//! vertices heavy in `U123`. Edges through `x` are colored by the classes
//! of their other three vertices, then adjusted to give chosen `R`
//! vertices a low degree in the auxiliary graph.

use thiserror::Error;

use crate::hypergraph::{random_coloring, ColoredHypergraph, Params};
use crate::subset::for_each_superset;

use super::gamma::sorted4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileFixtureError {
    #[error("class sizes {0:?} do not fit: need |P|, |Q| >= 1, |T| <= 1, n >= 85 and room in R for the low vertices")]
    Sizes([usize; 4]),
    #[error("pair {{x, {vertex}}} would exceed its budget of two edges in a missing color")]
    Budget { vertex: usize },
    #[error("{0}")]
    Unsupported(&'static str),
}

/// Builder for a pivot fixture. Sizes are in the final color labels:
/// `|T| <= |P| <= |Q|`, `T = U23`, `P = U12`, `Q = U13`, `R = U123`.
#[derive(Debug, Clone)]
pub struct ProfileFixture {
    pub n: usize,
    pub seed: u64,
    pub t: usize,
    pub p: usize,
    pub q: usize,
    /// Target Γ'-degrees of the low `R` vertices `1, 2, ...` (at most two).
    pub low_degrees: Vec<usize>,
    /// Γ'-degree of the `T` vertex (Case 2, at most two).
    pub t_degree: usize,
    /// Make `{x, w1, w2, a}` (Case 1) or `{x, w1, u23, a}` (Case 2) color 1
    /// (`true`), or keep the reserved sets of `w1` and `w2` apart (`false`).
    pub overlap: bool,
    /// Pair up `R` so that every `R` vertex is in `B1` (Case 2 early exit).
    pub b1_pairs: bool,
    /// Final color permutation (`perm[old - 1] = new`), to exercise relabeling.
    pub permute: Option<[u8; 3]>,
}

impl ProfileFixture {
    pub fn case1(p: usize, q: usize, seed: u64) -> Self {
        ProfileFixture {
            n: 85,
            seed,
            t: 0,
            p,
            q,
            low_degrees: vec![],
            t_degree: 0,
            overlap: false,
            b1_pairs: false,
            permute: None,
        }
    }

    pub fn case2(p: usize, q: usize, seed: u64) -> Self {
        ProfileFixture { t: 1, ..Self::case1(p, q, seed) }
    }

    pub fn r(&self) -> usize {
        self.n - 1 - self.t - self.p - self.q
    }

    /// Vertex ids: `x = 0`, then the low `R` vertices, then `T`, then the
    /// rest of `R`, then `P`, then `Q`. Returns `(T, P, Q, R)`.
    pub fn layout(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let lows = self.low_degrees.len();
        let mut next = 1..self.n;
        let mut take = |k: usize| -> Vec<usize> { (&mut next).take(k).collect() };
        let mut r = take(lows);
        let t = take(self.t);
        r.extend(take(self.r() - lows));
        let p = take(self.p);
        let q = take(self.q);
        (t, p, q, r)
    }

    pub fn build(&self) -> Result<ColoredHypergraph, ProfileFixtureError> {
        let (n, x) = (self.n, 0usize);
        let sizes = [self.t, self.p, self.q, self.n.saturating_sub(1 + self.t + self.p + self.q)];
        let need_r = self.low_degrees.len() + usize::from(self.overlap);
        if n < 85 || self.t > 1 || self.p == 0 || self.q == 0 || self.t + self.p + self.q > n - 1 || sizes[3] < need_r {
            return Err(ProfileFixtureError::Sizes(sizes));
        }
        if self.low_degrees.len() > 2 || (self.t == 1 && self.low_degrees.len() > 1) || self.t_degree > 2 {
            return Err(ProfileFixtureError::Unsupported("at most two low vertices (one in Case 2), T degree <= 2"));
        }
        if self.b1_pairs && (self.t != 1 || sizes[3] % 2 == 1) {
            return Err(ProfileFixtureError::Unsupported("B1 pairing needs Case 2 and |R| even"));
        }
        let (tt, pp, qq, rr) = self.layout();
        #[derive(Clone, Copy, PartialEq)]
        enum Class {
            X,
            T,
            P,
            Q,
            R,
        }
        let mut class = vec![Class::R; n];
        class[x] = Class::X;
        tt.iter().for_each(|&v| class[v] = Class::T);
        pp.iter().for_each(|&v| class[v] = Class::P);
        qq.iter().for_each(|&v| class[v] = Class::Q);
        let (y, z) = (pp[0], qq[0]);

        let params = Params::new(n, 4, 2, 3).expect("valid");
        let mut h = random_coloring(&params, self.seed).expect("valid");

        // Default colors of the edges through x.
        for_each_superset(&[x], 4, n, |e| {
            let others = [e[1], e[2], e[3]];
            let has = |k: Class| others.iter().any(|&v| class[v] == k);
            let color = if has(Class::T) {
                if has(Class::P) {
                    2
                } else if has(Class::Q) {
                    3
                } else {
                    2 + (others.iter().sum::<usize>() % 2) as u8
                }
            } else {
                match (has(Class::P), has(Class::Q)) {
                    (true, true) => 1,
                    (true, false) => 2,
                    (false, true) => 3,
                    (false, false) => 1,
                }
            };
            h.set_color(e, color);
        });

        // Color for an edge {x, w, w', a}, w, w' in R, that is safe on {x, a}.
        let safe = |a: usize, parity: usize| -> u8 {
            match class[a] {
                Class::Q => 3,
                Class::P | Class::T => 2,
                _ => 2 + (parity % 2) as u8,
            }
        };

        if self.b1_pairs {
            for pair in rr.chunks(2) {
                for_each_superset(&[pair[0], pair[1]], 4, n, |e| {
                    let parity: usize = e.iter().sum();
                    let col = if e[0] == x {
                        let a = e[1..].iter().copied().find(|v| !pair.contains(v)).expect("three others");
                        safe(a, parity)
                    } else {
                        2 + (parity % 2) as u8
                    };
                    h.set_color(e, col);
                });
            }
        }

        // Budget of edges in the missing color on each pair {x, v}.
        let mut spent = vec![0usize; n];
        for_each_superset(&[x], 4, n, |e| {
            for &v in &e[1..] {
                let c = h.color_of_sorted(e);
                let missing = match class[v] {
                    Class::T => 1,
                    Class::P => 3,
                    Class::Q => 2,
                    _ => 0,
                };
                if c == missing {
                    spent[v] += 1;
                }
            }
        });
        let mut recolor = |h: &mut ColoredHypergraph, e: [usize; 4], to: u8| -> Result<(), ProfileFixtureError> {
            let from = h.color_of_sorted(&e);
            for &v in &e[1..] {
                let missing = match class[v] {
                    Class::T => 1,
                    Class::P => 3,
                    Class::Q => 2,
                    _ => 0,
                };
                if to == missing && from != missing {
                    spent[v] += 1;
                } else if from == missing && to != missing {
                    spent[v] -= 1;
                }
                if spent[v] > 2 {
                    return Err(ProfileFixtureError::Budget { vertex: v });
                }
            }
            h.set_color(&e, to);
            Ok(())
        };

        // Γ'-edge sources at an R vertex w, in rule order, with the color a
        // source is demoted to.
        let e1: Vec<usize> = if self.t == 1 { pp.iter().skip(1).take(1).copied().collect() } else { pp[1..].to_vec() };
        for (k, &d) in self.low_degrees.iter().enumerate() {
            let w = rr[k];
            let mut sources: Vec<([usize; 4], u8)> = Vec::new();
            sources.extend(e1.iter().map(|&u| (sorted4(x, z, u, w), 3)));
            sources.extend(qq[1..].iter().map(|&q| (sorted4(x, y, q, w), 2)));
            sources.push((sorted4(x, y, z, w), 2));
            for &(e, to) in sources.iter().skip(d) {
                recolor(&mut h, e, to)?;
            }
        }

        if let Some(&u23) = tt.first() {
            for &q in qq[1..].iter().take(self.t_degree) {
                recolor(&mut h, sorted4(x, y, q, u23), 1)?;
            }
        }

        if self.t == 1 && self.overlap {
            let (w1, u23) = (rr[0], tt[0]);
            let a = (1..n).find(|&v| class[v] == Class::R && v != w1).expect("checked above");
            recolor(&mut h, sorted4(x, w1, u23, a), 1)?;
        }
        if self.t == 0 && !self.overlap && self.low_degrees.len() == 2 {
            let (w1, w2) = (rr[0], rr[1]);
            for a in (1..n).filter(|&a| a != w1 && a != w2) {
                let e = sorted4(x, w1, w2, a);
                if h.color_of_sorted(&e) == 1 {
                    recolor(&mut h, e, safe(a, a))?;
                }
            }
        }

        Ok(match self.permute {
            Some(perm) => h.recolored(&perm),
            None => h,
        })
    }
}

/// A random coloring in which vertex `v` lies on exactly `keep` edges of
/// `color` (`keep <= 1`); those edges are recolored with the other colors
/// in rotation.
pub fn near_missing_color(n: usize, v: usize, color: u8, keep: usize, seed: u64) -> ColoredHypergraph {
    let params = Params::new(n, 4, 2, 3).expect("valid");
    let mut h = random_coloring(&params, seed).expect("valid");
    let mut kept = 0;
    let mut flip = 0u8;
    for_each_superset(&[v], 4, n, |e| {
        if h.color_of_sorted(e) == color {
            if kept < keep {
                kept += 1;
            } else {
                flip ^= 1;
                let others: Vec<u8> = (1..=3).filter(|&k| k != color).collect();
                h.set_color(e, others[flip as usize]);
            }
        }
    });
    h
}

/// Like [`near_missing_color`], but the link of `v` is monochromatic in
/// `link_color` (apart from the kept edges).
pub fn monochromatic_link(n: usize, v: usize, color: u8, link_color: u8, keep: usize, seed: u64) -> ColoredHypergraph {
    let params = Params::new(n, 4, 2, 3).expect("valid");
    let mut h = random_coloring(&params, seed).expect("valid");
    let mut kept = 0;
    for_each_superset(&[v], 4, n, |e| {
        if kept < keep && h.color_of_sorted(e) == color {
            kept += 1;
        } else {
            h.set_color(e, link_color);
        }
    });
    h
}

/// A random coloring that never uses `absent`.
pub fn without_color(n: usize, absent: u8, seed: u64) -> ColoredHypergraph {
    let params = Params::new(n, 4, 2, 2).expect("valid");
    let two = random_coloring(&params, seed).expect("valid");
    let present: Vec<u8> = (1..=3).filter(|&k| k != absent).collect();
    let colors = two.colors().iter().map(|&k| present[k as usize - 1]).collect();
    ColoredHypergraph::from_colors(n, 4, 3, colors).expect("valid")
}

/// A coloring with a pair `{0, 1}` good in color 1 only.
pub fn single_good_pair(n: usize, seed: u64) -> ColoredHypergraph {
    let params = Params::new(n, 4, 2, 3).expect("valid");
    let mut h = random_coloring(&params, seed).expect("valid");
    for_each_superset(&[0, 1], 4, n, |e| h.set_color(e, 1));
    h
}
