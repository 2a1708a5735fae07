use thiserror::Error;

use crate::certificate::BergeCertificate;
use crate::hypergraph::ColoredHypergraph;
use crate::search::{berge_dfs, DfsOutcome};

/// Largest `n` the oracle accepts (the core-sequence space is `(n-1)!/2`).
pub const MAX_BRUTE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteVerdict {
    Found(BergeCertificate),
    /// The whole canonical search space was enumerated.
    ProvenNone,
}

impl BruteVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, BruteVerdict::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("instance too large for exhaustive search: n = {n} > {MAX_BRUTE_N}")]
    InstanceTooLarge { n: usize },
    #[error("tightness t = {t} outside 2..={r}")]
    Tightness { t: usize, r: usize },
}

/// Exhaustive search over every color and every core sequence with
/// `v_1 = 0`, `v_2 < v_n`, each checked for a perfect matching of windows to
/// distinct edges.
pub fn brute_force_exists(h: &ColoredHypergraph, t: usize) -> Result<BruteVerdict, BruteError> {
    if h.n() > MAX_BRUTE_N {
        return Err(BruteError::InstanceTooLarge { n: h.n() });
    }
    if t < 2 || t > h.r() {
        return Err(BruteError::Tightness { t, r: h.r() });
    }
    let colors: Vec<u8> = (1..=h.c() as u8).collect();
    match berge_dfs(h, t, &colors, None) {
        DfsOutcome::Found(cert) => Ok(BruteVerdict::Found(cert)),
        DfsOutcome::ProvenNone => Ok(BruteVerdict::ProvenNone),
        DfsOutcome::BudgetExhausted => unreachable!("unbudgeted search"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_berge_certificate;

    #[test]
    fn small_cases() {
        let h = ColoredHypergraph::monochromatic(5, 3, 1, 1).unwrap();
        let BruteVerdict::Found(cert) = brute_force_exists(&h, 2).unwrap() else { panic!() };
        assert!(verify_berge_certificate(&cert, &h, 2).is_pass());

        let h = ColoredHypergraph::monochromatic(4, 4, 2, 1).unwrap();
        assert_eq!(brute_force_exists(&h, 2).unwrap(), BruteVerdict::ProvenNone);

        let h = ColoredHypergraph::monochromatic(11, 3, 1, 1).unwrap();
        assert_eq!(brute_force_exists(&h, 2), Err(BruteError::InstanceTooLarge { n: 11 }));
    }

    #[test]
    fn split_k53_golden() {
        // Colex ranks 0..5 get color 1: every triple of {0,1,2,3} plus
        // {0,1,4}. Vertex 4 has one color-1 triple, so color 1 is out;
        // color 2 carries 0-2-1-3-4 (recorded verdict).
        let h = ColoredHypergraph::from_colors(5, 3, 2, (0..10).map(|k| if k < 5 { 1 } else { 2 }).collect()).unwrap();
        let BruteVerdict::Found(cert) = brute_force_exists(&h, 2).unwrap() else { panic!("expected a cycle") };
        assert_eq!(cert.color, 2);
        assert!(verify_berge_certificate(&cert, &h, 2).is_pass());
    }
}
