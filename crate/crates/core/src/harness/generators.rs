use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{random_coloring, ColoredHypergraph, HypergraphError, Params};
use crate::r4::{ProfileFixture, ProfileFixtureError};
use crate::subset::Subsets;

/// Coloring families for stress runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Uniform random colors.
    Random,
    /// Vertices split into `parts` random parts; an edge takes the color of
    /// the part of its largest vertex.
    Partition { parts: usize },
    /// Every vertex gets a random color; an edge takes the most frequent one
    /// among its vertices (ties to the smallest vertex).
    Majority,
    /// Monochromatic in color 1 apart from one random edge.
    NearMono,
    /// Prescribed pair-shadow profile at vertex 0 (`r = 4`, `c = 3`):
    /// `|U23| = t`, `|U12| = p`, the rest split between `U13` and `U123`.
    UProfile { t: usize, p: usize },
}

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("unknown generator {0:?} (expected random, partition[:k], majority, near-mono, u-profile[:t,p])")]
    Unknown(String),
    #[error("generator {gen} does not apply: {msg}")]
    NotApplicable { gen: String, msg: String },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Fixture(#[from] ProfileFixtureError),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Random => f.write_str("random"),
            Generator::Partition { parts } => write!(f, "partition:{parts}"),
            Generator::Majority => f.write_str("majority"),
            Generator::NearMono => f.write_str("near-mono"),
            Generator::UProfile { t, p } => write!(f, "u-profile:{t},{p}"),
        }
    }
}

impl FromStr for Generator {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GeneratorError::Unknown(s.to_string());
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name, arg) {
            ("random", None) => Ok(Generator::Random),
            ("majority", None) => Ok(Generator::Majority),
            ("near-mono", None) => Ok(Generator::NearMono),
            ("partition", None) => Ok(Generator::Partition { parts: 2 }),
            ("partition", Some(a)) => a.parse().map(|parts| Generator::Partition { parts }).map_err(|_| unknown()),
            ("u-profile", None) => Ok(Generator::UProfile { t: 1, p: 2 }),
            ("u-profile", Some(a)) => {
                let (t, p) = a.split_once(',').ok_or_else(unknown)?;
                Ok(Generator::UProfile {
                    t: t.trim().parse().map_err(|_| unknown())?,
                    p: p.trim().parse().map_err(|_| unknown())?,
                })
            }
            _ => Err(unknown()),
        }
    }
}

/// One coloring from `gen`, fully determined by `seed`.
pub fn generate(gen: Generator, params: &Params, seed: u64) -> Result<ColoredHypergraph, GeneratorError> {
    let (n, r, c) = (params.n, params.r, params.c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let not_applicable = |msg: &str| GeneratorError::NotApplicable { gen: gen.to_string(), msg: msg.to_string() };
    match gen {
        Generator::Random => Ok(random_coloring(params, seed)?),
        Generator::Partition { parts } => {
            if parts == 0 {
                return Err(not_applicable("need at least one part"));
            }
            let part: Vec<usize> = (0..n).map(|_| rng.random_range(0..parts)).collect();
            Ok(ColoredHypergraph::from_fn(n, r, c, |e| (part[e[r - 1]] % c) as u8 + 1)?)
        }
        Generator::Majority => {
            let vc: Vec<u8> = (0..n).map(|_| rng.random_range(1..=c as u8)).collect();
            Ok(ColoredHypergraph::from_fn(n, r, c, |e| {
                let mut best = (0usize, vc[e[0]]);
                for &k in e.iter().map(|&v| &vc[v]) {
                    let count = e.iter().filter(|&&v| vc[v] == k).count();
                    if count > best.0 {
                        best = (count, k);
                    }
                }
                best.1
            })?)
        }
        Generator::NearMono => {
            let total = Subsets::new(n, r).count();
            let odd = rng.random_range(0..total);
            let off = if c >= 2 { 2 } else { 1 };
            let mut k = 0;
            Ok(ColoredHypergraph::from_fn(n, r, c, |_| {
                k += 1;
                if k - 1 == odd {
                    off
                } else {
                    1
                }
            })?)
        }
        Generator::UProfile { t, p } => {
            if r != 4 || c != 3 {
                return Err(not_applicable("needs r = 4 and c = 3"));
            }
            let rest = n.saturating_sub(1 + t + p);
            let fixture = ProfileFixture { n, t, p, q: rest.div_ceil(2), ..ProfileFixture::case1(p, 1, seed) };
            Ok(fixture.build()?)
        }
    }
}

/// A deterministic stream of colorings; item `i` uses seed `seed + i`.
pub fn structured_colorings(
    gen: Generator,
    params: Params,
    seed: u64,
) -> impl Iterator<Item = Result<ColoredHypergraph, GeneratorError>> {
    (0u64..).map(move |i| generate(gen, &params, seed.wrapping_add(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["random", "partition:3", "majority", "near-mono", "u-profile:1,2"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
        assert_eq!("partition".parse::<Generator>().unwrap(), Generator::Partition { parts: 2 });
        assert!("bogus".parse::<Generator>().is_err());
        assert!("partition:x".parse::<Generator>().is_err());
    }

    #[test]
    fn partition_colors_by_max_vertex() {
        let p = Params::new(7, 3, 2, 2).unwrap();
        let h = generate(Generator::Partition { parts: 2 }, &p, 5).unwrap();
        let mut by_max = [0u8; 7];
        for e in Subsets::new(7, 3) {
            let k = h.color_of(&e);
            let slot = &mut by_max[e[2]];
            assert!(*slot == 0 || *slot == k);
            *slot = k;
        }
    }

    #[test]
    fn near_mono_has_one_off_edge() {
        let p = Params::new(8, 4, 2, 3).unwrap();
        let h = generate(Generator::NearMono, &p, 1).unwrap();
        assert_eq!(h.histogram(), vec![0, 69, 1, 0]);
    }

    #[test]
    fn streams_are_deterministic() {
        let p = Params::new(7, 3, 2, 3).unwrap();
        let a: Vec<_> = structured_colorings(Generator::Majority, p, 9).take(3).map(Result::unwrap).collect();
        let b: Vec<_> = structured_colorings(Generator::Majority, p, 9).take(3).map(Result::unwrap).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn u_profile_rejects_other_params() {
        let p = Params::new(9, 3, 2, 3).unwrap();
        assert!(matches!(
            generate(Generator::UProfile { t: 1, p: 2 }, &p, 0),
            Err(GeneratorError::NotApplicable { .. })
        ));
    }
}
