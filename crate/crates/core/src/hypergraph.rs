//! Edge colorings of the complete r-uniform hypergraph `K_n^r`.

use std::fmt::Write as _;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::subset::{self, binomial, rank_sorted, Subsets, MAX_N};

/// Largest number of colors; good-color sets are stored as `u64` masks.
pub const MAX_COLORS: usize = 64;

/// Upper bound on `C(n, r)` for a dense coloring (keeps allocation sane).
pub const MAX_EDGES: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("need 2 <= t <= r <= n, got n={n} r={r} t={t}")]
    Shape { n: usize, r: usize, t: usize },
    #[error("color count must be in 1..={MAX_COLORS}, got {0}")]
    Colors(usize),
    #[error("n = {0} exceeds the supported maximum {MAX_N}")]
    TooManyVertices(usize),
    #[error("C({n}, {r}) exceeds the dense-coloring limit")]
    TooManyEdges { n: usize, r: usize },
}

/// Problem parameters: `n` vertices, edges of size `r`, tightness `t`, and
/// `c` colors numbered `1..=c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Params {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub c: usize,
}

impl Params {
    pub fn new(n: usize, r: usize, t: usize, c: usize) -> Result<Self, ParamsError> {
        let p = Params { n, r, t, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        let Params { n, r, t, c } = *self;
        if !(2 <= t && t <= r && r <= n) {
            return Err(ParamsError::Shape { n, r, t });
        }
        if c == 0 || c > MAX_COLORS {
            return Err(ParamsError::Colors(c));
        }
        if n > MAX_N {
            return Err(ParamsError::TooManyVertices(n));
        }
        if binomial(n, r) > MAX_EDGES {
            return Err(ParamsError::TooManyEdges { n, r });
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        binomial(self.n, self.r) as usize
    }
}

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("color array has length {got}, expected C(n, r) = {expected}")]
    Length { got: usize, expected: usize },
    #[error("edge rank {rank} has color {color}, outside 1..={c}")]
    BadColor { rank: usize, color: u8, c: usize },
    #[error("permutation is not a bijection on 0..{0}")]
    BadPermutation(usize),
}

/// A `c`-edge-coloring of `K_n^r`. `colors[k]` is the (1-based) color of the
/// r-set with colex rank `k`.
///
/// The tightness `t` is not part of a coloring; it is supplied to the
/// operations that need it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredHypergraph {
    n: usize,
    r: usize,
    c: usize,
    colors: Vec<u8>,
}

impl ColoredHypergraph {
    /// Wraps a dense color array after checking its length and range.
    pub fn from_colors(n: usize, r: usize, c: usize, colors: Vec<u8>) -> Result<Self, HypergraphError> {
        // t = 2 is valid whenever r is; the coloring itself has no tightness.
        Params::new(n, r, 2, c)?;
        let expected = binomial(n, r) as usize;
        if colors.len() != expected {
            return Err(HypergraphError::Length { got: colors.len(), expected });
        }
        if let Some((rank, &color)) = colors.iter().enumerate().find(|(_, &k)| k == 0 || k as usize > c) {
            return Err(HypergraphError::BadColor { rank, color, c });
        }
        Ok(ColoredHypergraph { n, r, c, colors })
    }

    /// Every edge gets `color`.
    pub fn monochromatic(n: usize, r: usize, c: usize, color: u8) -> Result<Self, HypergraphError> {
        Self::from_colors(n, r, c, vec![color; binomial(n, r) as usize])
    }

    /// Colors every edge by `f(sorted edge)`.
    pub fn from_fn(n: usize, r: usize, c: usize, mut f: impl FnMut(&[usize]) -> u8) -> Result<Self, HypergraphError> {
        let colors = Subsets::new(n, r).map(|e| f(&e)).collect();
        Self::from_colors(n, r, c, colors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Parameters with the given tightness.
    pub fn params(&self, t: usize) -> Params {
        Params { n: self.n, r: self.r, t, c: self.c }
    }

    #[inline]
    pub fn color_at(&self, rank: usize) -> u8 {
        self.colors[rank]
    }

    /// Color of a sorted edge. Panics on malformed input; use
    /// [`ColoredHypergraph::try_color`] for untrusted sets.
    #[inline]
    pub fn color_of_sorted(&self, e: &[usize]) -> u8 {
        debug_assert_eq!(e.len(), self.r);
        self.colors[rank_sorted(e) as usize]
    }

    /// Color of an edge given in any order.
    #[inline]
    pub fn color_of(&self, e: &[usize]) -> u8 {
        debug_assert_eq!(e.len(), self.r);
        self.colors[subset::rank_unsorted(e) as usize]
    }

    /// Color of an arbitrary vertex set, or `None` when it is not an edge.
    pub fn try_color(&self, e: &[usize]) -> Option<u8> {
        if e.len() != self.r {
            return None;
        }
        let mut s = e.to_vec();
        s.sort_unstable();
        let rank = subset::rank_subset(&s, self.n).ok()?;
        Some(self.colors[rank as usize])
    }

    pub fn set_color_at(&mut self, rank: usize, color: u8) {
        assert!(color >= 1 && color as usize <= self.c, "color {color} out of range");
        self.colors[rank] = color;
    }

    pub fn set_color(&mut self, e: &[usize], color: u8) {
        let rank = subset::rank_unsorted(e) as usize;
        self.set_color_at(rank, color);
    }

    /// Number of edges of each color; index 0 is unused.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.c + 1];
        for &k in &self.colors {
            h[k as usize] += 1;
        }
        h
    }

    /// The image of this coloring under the vertex map `v -> perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, HypergraphError> {
        check_permutation(perm, self.n)?;
        let mut colors = vec![0u8; self.colors.len()];
        let mut img = vec![0usize; self.r];
        for (rank, e) in Subsets::new(self.n, self.r).enumerate() {
            for (slot, &v) in img.iter_mut().zip(&e) {
                *slot = perm[v];
            }
            img.sort_unstable();
            colors[rank_sorted(&img) as usize] = self.colors[rank];
        }
        Ok(ColoredHypergraph { colors, ..*self })
    }

    /// Applies the color map `k -> sigma[k - 1]` to every edge.
    pub fn recolored(&self, sigma: &[u8]) -> Self {
        assert_eq!(sigma.len(), self.c);
        let colors = self.colors.iter().map(|&k| sigma[k as usize - 1]).collect();
        ColoredHypergraph { colors, ..*self }
    }

    /// Serializes to the line-oriented text format (edges in colex order).
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.colors.len() * (3 * self.r + 4) + 32);
        out.push_str(TEXT_HEADER);
        out.push('\n');
        let _ = writeln!(out, "r={} n={} c={}", self.r, self.n, self.c);
        for (e, &k) in Subsets::new(self.n, self.r).zip(&self.colors) {
            for (i, v) in e.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
            }
            let _ = writeln!(out, " : {k}");
        }
        out
    }

    /// Parses the text format. Every edge must be listed exactly once.
    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text(reader: impl BufRead) -> Result<Self, FormatError> {
        let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
            Ok(l) if l.trim().is_empty() || l.trim_start().starts_with('#') => None,
            other => Some((i + 1, other)),
        });
        let mut next = |what: &'static str| -> Result<(usize, String), FormatError> {
            match lines.next() {
                Some((i, Ok(l))) => Ok((i, l)),
                Some((_, Err(e))) => Err(FormatError::Io(e.to_string())),
                None => Err(FormatError::Missing(what)),
            }
        };
        let (line, header) = next("header")?;
        if header.trim() != TEXT_HEADER {
            return Err(FormatError::Header { line, found: header });
        }
        let (line, dims) = next("parameter line")?;
        let kv = parse_kv(&dims, line, &["r", "n", "c"])?;
        let (r, n, c) = (kv[0], kv[1], kv[2]);
        Params::new(n, r, 2, c).map_err(|e| FormatError::Params { line, msg: e.to_string() })?;

        let total = binomial(n, r) as usize;
        let mut colors = vec![0u8; total];
        let mut seen = 0usize;
        let mut edge = Vec::with_capacity(r);
        for (line, l) in lines {
            let l = l.map_err(|e| FormatError::Io(e.to_string()))?;
            let (lhs, rhs) = l.split_once(':').ok_or(FormatError::Syntax { line, msg: "missing ':'".into() })?;
            edge.clear();
            for tok in lhs.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| FormatError::Syntax { line, msg: format!("bad vertex {tok:?}") })?;
                edge.push(v);
            }
            if edge.len() != r {
                return Err(FormatError::Syntax { line, msg: format!("edge has {} vertices, expected {r}", edge.len()) });
            }
            let rank = subset::rank_subset(&edge, n).map_err(|e| FormatError::Syntax { line, msg: e.to_string() })?;
            let color: u8 = rhs
                .trim()
                .parse()
                .map_err(|_| FormatError::Syntax { line, msg: format!("bad color {:?}", rhs.trim()) })?;
            if color == 0 || color as usize > c {
                return Err(FormatError::Syntax { line, msg: format!("color {color} outside 1..={c}") });
            }
            let slot = &mut colors[rank as usize];
            if *slot != 0 {
                return Err(FormatError::Duplicate { line, edge: edge.clone() });
            }
            *slot = color;
            seen += 1;
        }
        if seen != total {
            let rank = colors.iter().position(|&k| k == 0).unwrap_or(0);
            let missing = subset::unrank_subset(rank as u64, n, r).unwrap_or_default();
            return Err(FormatError::MissingEdges { listed: seen, expected: total, first: missing });
        }
        Ok(ColoredHypergraph { n, r, c, colors })
    }
}

pub const TEXT_HEADER: &str = "berge-coloring v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("read error: {0}")]
    Io(String),
    #[error("unexpected end of input: missing {0}")]
    Missing(&'static str),
    #[error("line {line}: expected header, found {found:?}")]
    Header { line: usize, found: String },
    #[error("line {line}: {msg}")]
    Params { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: edge {edge:?} listed twice")]
    Duplicate { line: usize, edge: Vec<usize> },
    #[error("{listed} of {expected} edges listed; first missing edge {first:?}")]
    MissingEdges { listed: usize, expected: usize, first: Vec<usize> },
}

/// Parses `k1=v1 k2=v2 ...` with exactly the given keys in any order.
pub(crate) fn parse_kv(s: &str, line: usize, keys: &[&str]) -> Result<Vec<usize>, FormatError> {
    let mut out = vec![None; keys.len()];
    for tok in s.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or(FormatError::Params { line, msg: format!("expected key=value, found {tok:?}") })?;
        let idx = keys
            .iter()
            .position(|&key| key == k)
            .ok_or(FormatError::Params { line, msg: format!("unknown key {k:?}") })?;
        let v = v
            .parse()
            .map_err(|_| FormatError::Params { line, msg: format!("bad value for {k}: {v:?}") })?;
        if out[idx].replace(v).is_some() {
            return Err(FormatError::Params { line, msg: format!("key {k:?} repeated") });
        }
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or(FormatError::Params { line, msg: format!("missing key {k:?}") }))
        .collect()
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), HypergraphError> {
    if perm.len() != n {
        return Err(HypergraphError::BadPermutation(n));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(HypergraphError::BadPermutation(n));
        }
    }
    Ok(())
}

/// Uniformly random coloring, fully determined by `seed`.
pub fn random_coloring(params: &Params, seed: u64) -> Result<ColoredHypergraph, HypergraphError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = params.c as u8;
    let colors = (0..params.edge_count()).map(|_| rng.random_range(1..=c)).collect();
    Ok(ColoredHypergraph { n: params.n, r: params.r, c: params.c, colors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(Params::new(5, 3, 2, 2).is_ok());
        assert!(Params::new(5, 3, 4, 2).is_err());
        assert!(Params::new(5, 6, 2, 2).is_err());
        assert!(Params::new(5, 3, 1, 2).is_err());
        assert!(Params::new(5, 3, 2, 0).is_err());
        assert!(Params::new(5, 3, 2, 65).is_err());
        assert!(Params::new(129, 3, 2, 2).is_err());
        assert!(Params::new(128, 64, 2, 2).is_err());
    }

    #[test]
    fn random_coloring_examples() {
        let p = Params::new(6, 3, 2, 1).unwrap();
        assert!(random_coloring(&p, 99).unwrap().colors().iter().all(|&k| k == 1));

        let p = Params::new(5, 3, 2, 2).unwrap();
        assert_eq!(random_coloring(&p, 0).unwrap(), random_coloring(&p, 0).unwrap());

        let p = Params::new(8, 4, 2, 3).unwrap();
        let h = random_coloring(&p, 7).unwrap();
        assert_eq!(h.histogram().iter().sum::<usize>(), 70);
        assert!(h.histogram()[1..].iter().all(|&k| k > 0));
    }

    #[test]
    fn text_round_trip() {
        let p = Params::new(7, 3, 2, 3).unwrap();
        let h = random_coloring(&p, 3).unwrap();
        let text = h.to_text();
        assert!(text.starts_with("berge-coloring v1\nr=3 n=7 c=3\n0 1 2 : "));
        let back = ColoredHypergraph::from_text(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn text_rejects_malformed() {
        let h = ColoredHypergraph::monochromatic(4, 3, 2, 1).unwrap();
        let good = h.to_text();
        let cases = [
            good.replace("berge-coloring v1", "berge-coloring v2"),
            good.replace("r=3", "r=9"),
            good.replace("0 1 3 : 1", "1 0 3 : 1"),
            good.replace("0 1 3 : 1", "0 1 2 : 1"),
            good.replace("0 1 3 : 1", "0 1 3 : 3"),
            good.replace("0 1 3 : 1\n", ""),
            good.replace("0 1 3 : 1", "0 1 3 1"),
            good.replace("0 1 3 : 1", "0 1 : 1"),
            good.replace("0 1 3 : 1", "0 1 x : 1"),
            String::new(),
        ];
        for bad in &cases {
            assert!(ColoredHypergraph::from_text(bad).is_err(), "accepted {bad:?}");
        }
        // Order of lines does not matter and comments are skipped.
        let mut lines: Vec<&str> = good.lines().collect();
        lines[2..].reverse();
        let shuffled = format!("# comment\n{}\n", lines.join("\n"));
        assert_eq!(ColoredHypergraph::from_text(&shuffled).unwrap(), h);
    }

    #[test]
    fn relabel_moves_colors_with_vertices() {
        let h = ColoredHypergraph::from_fn(6, 3, 2, |e| if e.contains(&0) { 2 } else { 1 }).unwrap();
        let perm = [5, 0, 1, 2, 3, 4];
        let g = h.relabeled(&perm).unwrap();
        for e in Subsets::new(6, 3) {
            let img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            assert_eq!(g.color_of(&img), h.color_of_sorted(&e));
        }
        assert!(h.relabeled(&[0, 0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn from_colors_checks() {
        assert!(ColoredHypergraph::from_colors(4, 3, 2, vec![1; 3]).is_err());
        assert!(ColoredHypergraph::from_colors(4, 3, 2, vec![1, 2, 3, 1]).is_err());
        assert!(ColoredHypergraph::from_colors(4, 3, 2, vec![1, 2, 2, 1]).is_ok());
        assert!(ColoredHypergraph::from_colors(4, 4, 2, vec![1]).is_ok());
    }
}
