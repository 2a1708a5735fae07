//! Per-vertex profiles of the pair shadow of a 3-colored `K_n^4`, vertex
//! classes, and pivot selection.

use serde::Serialize;

use crate::shadow::ShadowMulticoloring;
use crate::subset::Subsets;

use super::R4Error;

/// Good-color masks (bit `i - 1` for color `i`).
pub const MASK_12: u64 = 0b011;
pub const MASK_13: u64 = 0b101;
pub const MASK_23: u64 = 0b110;
pub const MASK_123: u64 = 0b111;

/// Neighbors of `v` split by the exact good-color set of the joining pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UProfile {
    pub v: usize,
    pub u12: Vec<usize>,
    pub u13: Vec<usize>,
    pub u23: Vec<usize>,
    pub u123: Vec<usize>,
}

impl UProfile {
    /// The set whose pairs miss exactly color `k` (`U23` for 1, `U13` for 2,
    /// `U12` for 3).
    pub fn missing(&self, k: u8) -> &[usize] {
        match k {
            1 => &self.u23,
            2 => &self.u13,
            3 => &self.u12,
            _ => panic!("color {k} out of range"),
        }
    }

    /// `min(|U23|, |U12|, |U13|)`.
    pub fn pi(&self) -> usize {
        self.u23.len().min(self.u12.len()).min(self.u13.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileResult {
    Profiles(Vec<UProfile>),
    /// First pair (colex order) with at most one good color.
    SingleGoodEdge { pair: [usize; 2], goodset: u64 },
}

pub fn compute_u_profiles(s: &ShadowMulticoloring) -> Result<ProfileResult, R4Error> {
    let p = s.params();
    if p.r != 4 || p.t != 2 || p.c != 3 {
        return Err(R4Error::InvalidParams(format!(
            "profiles need r=4, t=2, c=3; got r={} t={} c={}",
            p.r, p.t, p.c
        )));
    }
    let n = p.n;
    let mut out: Vec<UProfile> = (0..n)
        .map(|v| UProfile { v, u12: vec![], u13: vec![], u23: vec![], u123: vec![] })
        .collect();
    for (k, pair) in Subsets::new(n, 2).enumerate() {
        let g = s.goodset_at(k);
        let (a, b) = (pair[0], pair[1]);
        let (pa, pb) = {
            let (lo, hi) = out.split_at_mut(b);
            (&mut lo[a], &mut hi[0])
        };
        match g {
            MASK_12 => (pa.u12.push(b), pb.u12.push(a)),
            MASK_13 => (pa.u13.push(b), pb.u13.push(a)),
            MASK_23 => (pa.u23.push(b), pb.u23.push(a)),
            MASK_123 => (pa.u123.push(b), pb.u123.push(a)),
            _ => return Ok(ProfileResult::SingleGoodEdge { pair: [a, b], goodset: g }),
        };
    }
    for prof in &mut out {
        prof.u12.sort_unstable();
        prof.u13.sort_unstable();
        prof.u23.sort_unstable();
        prof.u123.sort_unstable();
    }
    Ok(ProfileResult::Profiles(out))
}

/// Vertex classes: `B_i` holds the vertices whose two mixed sets involving
/// color `i` are empty while the third is not; `B_4` those with
/// `|U123| >= n/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BClassification {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub b3: Vec<usize>,
    pub b4: Vec<usize>,
    /// Vertices in none of the classes.
    pub rest: Vec<usize>,
}

impl BClassification {
    pub fn covers(&self) -> bool {
        self.rest.is_empty()
    }

    pub fn in_b1(&self, v: usize) -> bool {
        self.b1.binary_search(&v).is_ok()
    }
}

pub fn classify(profiles: &[UProfile]) -> BClassification {
    let n = profiles.len();
    let mut b = BClassification { b1: vec![], b2: vec![], b3: vec![], b4: vec![], rest: vec![] };
    for p in profiles {
        let (e12, e13, e23) = (p.u12.is_empty(), p.u13.is_empty(), p.u23.is_empty());
        let mut any = false;
        if e12 && e13 && !e23 {
            b.b1.push(p.v);
            any = true;
        }
        if e12 && e23 && !e13 {
            b.b2.push(p.v);
            any = true;
        }
        if e13 && e23 && !e12 {
            b.b3.push(p.v);
            any = true;
        }
        if 2 * p.u123.len() >= n {
            b.b4.push(p.v);
            any = true;
        }
        if !any {
            b.rest.push(p.v);
        }
    }
    b
}

/// The pivot vertex `x` and everything derived from it, expressed in the
/// relabeled colors (`sigma[old - 1] = new`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotSelection {
    pub x: usize,
    pub pi: usize,
    pub sigma: [u8; 3],
    pub u12: Vec<usize>,
    pub u13: Vec<usize>,
    pub u23: Vec<usize>,
    pub u123: Vec<usize>,
    pub y: usize,
    pub z: usize,
    pub u23_vertex: Option<usize>,
    pub u12_vertex: Option<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
}

/// Produced once per instance, so the size gap between variants is harmless.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PivotOutcome {
    BCover,
    Pivot(PivotSelection),
}

/// Splits a sorted set alternately into `(A, B)`, so `|B| <= |A| <= |B| + 1`
/// and the smallest element lands in `A`.
pub fn alternate_split(set: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = set.iter().step_by(2).copied().collect();
    let b = set.iter().skip(1).step_by(2).copied().collect();
    (a, b)
}

/// Chooses the color relabeling for `p`: the missing-color sets are ordered
/// by size (then smallest member, then label) and mapped so that
/// `|U23| <= |U12| <= |U13|` afterwards. Returns `sigma[old - 1] = new`.
pub fn relabel_for(p: &UProfile) -> [u8; 3] {
    let mut missing: Vec<u8> = vec![1, 2, 3];
    missing.sort_by_key(|&k| {
        let set = p.missing(k);
        (set.len(), set.first().copied().unwrap_or(usize::MAX), k)
    });
    // Smallest set must miss new color 1 (U23), the middle one new color 3
    // (U12), the largest new color 2 (U13).
    let mut sigma = [0u8; 3];
    sigma[missing[0] as usize - 1] = 1;
    sigma[missing[1] as usize - 1] = 3;
    sigma[missing[2] as usize - 1] = 2;
    sigma
}

pub fn classify_and_pivot(profiles: &[UProfile]) -> Result<(BClassification, PivotOutcome), R4Error> {
    let classes = classify(profiles);
    if classes.covers() {
        return Ok((classes, PivotOutcome::BCover));
    }
    let x = *classes
        .rest
        .iter()
        .min_by_key(|&&v| (profiles[v].pi(), profiles[v].u123.len(), v))
        .expect("rest nonempty");
    let p = &profiles[x];
    let sigma = relabel_for(p);
    let inv = |new: u8| (1..=3u8).find(|&k| sigma[k as usize - 1] == new).unwrap();
    let u23 = p.missing(inv(1)).to_vec();
    let u13 = p.missing(inv(2)).to_vec();
    let u12 = p.missing(inv(3)).to_vec();
    let u123 = p.u123.clone();

    if u23.len() >= 2 || (u23.len() == 1 && u12.len() >= 3) || u12.is_empty() || u13.is_empty() {
        return Err(R4Error::PivotInvariantViolation {
            x,
            sizes: [u23.len(), u12.len(), u13.len(), u123.len()],
        });
    }
    let (a, b) = alternate_split(&u123);
    let (a_prime, b_prime) = alternate_split(&u12);
    let sel = PivotSelection {
        x,
        pi: p.pi(),
        sigma,
        y: u12[0],
        z: u13[0],
        u23_vertex: u23.first().copied(),
        u12_vertex: u12.get(1).copied(),
        u12,
        u13,
        u23,
        u123,
        a,
        b,
        a_prime,
        b_prime,
    };
    Ok((classes, PivotOutcome::Pivot(sel)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(v: usize, n: usize, sizes: [usize; 4]) -> UProfile {
        // Fill U23, U12, U13, U123 with consecutive vertices skipping v.
        let mut others = (0..n).filter(|&u| u != v);
        let mut take = |k: usize| -> Vec<usize> { (&mut others).take(k).collect() };
        let u23 = take(sizes[0]);
        let u12 = take(sizes[1]);
        let u13 = take(sizes[2]);
        let u123 = take(sizes[3]);
        UProfile { v, u12, u13, u23, u123 }
    }

    #[test]
    fn split_is_balanced() {
        let (a, b) = alternate_split(&[3, 5, 8, 9, 12]);
        assert_eq!(a, vec![3, 8, 12]);
        assert_eq!(b, vec![5, 9]);
        assert_eq!(alternate_split(&[]), (vec![], vec![]));
    }

    #[test]
    fn pivot_from_synthetic_profiles() {
        let n = 85;
        let mut profiles: Vec<UProfile> = (0..n).map(|v| profile(v, n, [0, 0, 0, n - 1])).collect();
        // Vertex 7: (|U23|, |U12|, |U13|, |U123|) = (0, 5, 70, 9).
        profiles[7] = profile(7, n, [0, 5, 70, 9]);
        let (classes, out) = classify_and_pivot(&profiles).unwrap();
        assert_eq!(classes.rest, vec![7]);
        let PivotOutcome::Pivot(sel) = out else { panic!("expected pivot") };
        assert_eq!((sel.x, sel.pi), (7, 0));
        assert_eq!(sel.sigma, [1, 2, 3]);
        assert_eq!((sel.u23.len(), sel.u12.len(), sel.u13.len()), (0, 5, 70));
        assert_eq!(sel.y, sel.u12[0]);
        assert_eq!(sel.a.len(), 5);
        assert_eq!(sel.b.len(), 4);
        assert!(sel.a_prime.contains(&sel.y));
    }

    #[test]
    fn ties_go_to_lowest_id() {
        let n = 85;
        let mut profiles: Vec<UProfile> = (0..n).map(|v| profile(v, n, [0, 0, 0, n - 1])).collect();
        profiles[30] = profile(30, n, [0, 5, 70, 9]);
        profiles[12] = profile(12, n, [0, 6, 69, 9]);
        let (_, out) = classify_and_pivot(&profiles).unwrap();
        let PivotOutcome::Pivot(sel) = out else { panic!() };
        assert_eq!(sel.x, 12);
    }

    #[test]
    fn relabeling_sorts_sets() {
        let n = 85;
        let mut profiles: Vec<UProfile> = (0..n).map(|v| profile(v, n, [0, 0, 0, n - 1])).collect();
        // Old labels: U23 = 70, U12 = 1 ... as sizes [u23, u12, u13, u123].
        profiles[0] = profile(0, n, [70, 1, 2, 11]);
        let (_, out) = classify_and_pivot(&profiles).unwrap();
        let PivotOutcome::Pivot(sel) = out else { panic!() };
        assert_eq!((sel.u23.len(), sel.u12.len(), sel.u13.len()), (1, 2, 70));
        // Old U12 (missing 3) is the smallest -> new missing 1.
        assert_eq!(sel.sigma, [2, 3, 1]);
    }

    #[test]
    fn covering_and_violations() {
        let n = 85;
        let profiles: Vec<UProfile> = (0..n).map(|v| profile(v, n, [0, 0, 0, n - 1])).collect();
        assert_eq!(classify_and_pivot(&profiles).unwrap().1, PivotOutcome::BCover);
        let mut bad = profiles.clone();
        bad[3] = profile(3, n, [2, 3, 60, 19]);
        assert!(matches!(classify_and_pivot(&bad), Err(R4Error::PivotInvariantViolation { x: 3, .. })));
        let mut bad = profiles;
        bad[3] = profile(3, n, [1, 3, 60, 20]);
        assert!(matches!(classify_and_pivot(&bad), Err(R4Error::PivotInvariantViolation { x: 3, .. })));
    }
}
