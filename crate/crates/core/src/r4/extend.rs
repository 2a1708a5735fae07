//! Turning a Hamiltonian cycle of Γ into a color-1 Berge-cycle of `H`.

use std::collections::{HashMap, HashSet};

use crate::certificate::{verify_berge_certificate, BergeCertificate, VerificationReport};
use crate::hypergraph::ColoredHypergraph;
use crate::matching::Matcher;
use crate::subset::for_each_superset;

use super::gamma::{sorted4, Backing, Edge4, GammaConstruction};
use super::R4Error;

/// Puts `x` last; in Case 1 also makes sure the cycle does not start at `w_1`.
pub fn normalize_cycle(gamma: &GammaConstruction, cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let at = cycle.iter().position(|&v| v == gamma.x).expect("x on the cycle");
    let mut core: Vec<usize> = cycle.to_vec();
    core.rotate_left((at + 1) % n);
    if gamma.case == 1 && gamma.w1() == Some(core[0]) {
        core[..n - 1].reverse();
    }
    core
}

fn color1_supersets(h: &ColoredHypergraph, pair: [usize; 2]) -> Vec<Edge4> {
    let mut base = pair;
    base.sort_unstable();
    let mut out = Vec::new();
    for_each_superset(&base, 4, h.n(), |e| {
        if h.color_of_sorted(e) == 1 {
            out.push([e[0], e[1], e[2], e[3]]);
        }
    });
    out
}

/// Assigns a distinct color-1 edge to every position of the normalized
/// cycle. Rule-backed positions take their fixed edge; `E5` positions draw
/// `{x, y, v, u}` with `u` outside the exclusion list; the remaining ones
/// (including both positions at `x`) are solved together by one matching.
pub fn extend_to_berge(
    gamma: &GammaConstruction,
    cycle: &[usize],
    h: &ColoredHypergraph,
) -> Result<BergeCertificate, R4Error> {
    let n = h.n();
    if cycle.len() != n || !gamma.graph.is_hamiltonian_cycle(cycle) {
        return Err(R4Error::InvalidParams("cycle is not Hamiltonian in the auxiliary graph".into()));
    }
    let core = normalize_cycle(gamma, cycle);
    let x = gamma.x;
    let at = |i: isize| core[i.rem_euclid(n as isize) as usize];

    let mut fixed: Vec<Option<Edge4>> = vec![None; n];
    let mut pools: Vec<(usize, Vec<Edge4>)> = Vec::new();
    let mut taken: HashSet<Edge4> = HashSet::new();
    for i in 0..n {
        let (a, b) = (core[i], core[(i + 1) % n]);
        let wrap = i + 2 >= n;
        let backing = if wrap {
            Backing::Pool
        } else {
            gamma.provenance_of(a, b).expect("cycle edges are in Γ").backing
        };
        match backing {
            Backing::Fixed(e) => {
                if h.color_of_sorted(&e) != 1 || !taken.insert(e) {
                    return Err(R4Error::ExtensionFailed { position: i, pair: [a, b], pool: vec![e.to_vec()] });
                }
                fixed[i] = Some(e);
            }
            Backing::YStar => {
                let ii = i as isize;
                let banned = [gamma.z, at(ii - 1), a, b, at(ii + 2), core[0], core[n - 2]];
                let pool = gamma
                    .u13
                    .iter()
                    .filter(|u| !banned.contains(u))
                    .map(|&u| sorted4(x, a, b, u))
                    .filter(|e| h.color_of_sorted(e) == 1)
                    .collect();
                pools.push((i, pool));
            }
            Backing::Pool => pools.push((i, color1_supersets(h, [a, b]))),
        }
    }

    let mut ids: HashMap<Edge4, usize> = HashMap::new();
    let mut by_id: Vec<Edge4> = Vec::new();
    let mut matcher = Matcher::new(0);
    for (i, pool) in &pools {
        let mut nb = Vec::new();
        for e in pool.iter().filter(|e| !taken.contains(*e)) {
            let id = *ids.entry(*e).or_insert_with(|| {
                by_id.push(*e);
                by_id.len() - 1
            });
            nb.push(id);
        }
        matcher.grow_right(by_id.len());
        if !matcher.push_left(nb) {
            let (a, b) = (core[*i], core[(*i + 1) % n]);
            return Err(R4Error::ExtensionFailed {
                position: *i,
                pair: [a, b],
                pool: pool.iter().map(|e| e.to_vec()).collect(),
            });
        }
    }
    for ((i, _), m) in pools.iter().zip(matcher.assignment()) {
        fixed[*i] = Some(by_id[m.expect("perfect matching")]);
    }
    let cert = BergeCertificate {
        color: 1,
        core,
        edges: fixed.into_iter().map(|e| e.expect("assigned").to_vec()).collect(),
        t: 2,
    };
    match verify_berge_certificate(&cert, h, 2) {
        VerificationReport::Pass => Ok(cert),
        VerificationReport::Fail(v) => Err(R4Error::Verification(v)),
    }
}
