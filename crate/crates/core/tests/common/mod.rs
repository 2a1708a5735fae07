#![allow(dead_code)]

use std::collections::HashSet;

use berge_core::certificate::BergeCertificate;
use berge_core::hypergraph::ColoredHypergraph;

/// Independent check of a Hamiltonian Berge-cycle: the core is a
/// permutation, edges are distinct r-sets of the certificate color, and each
/// edge holds its window of `t` consecutive core vertices.
pub fn is_valid_berge(h: &ColoredHypergraph, cert: &BergeCertificate, t: usize) -> bool {
    let n = h.n();
    if cert.core.len() != n || cert.edges.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &cert.core {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let mut edges = HashSet::new();
    for (i, e) in cert.edges.iter().enumerate() {
        let mut s = e.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != h.r() || s.iter().any(|&v| v >= n) || !edges.insert(s.clone()) {
            return false;
        }
        if naive_color(h, &s) != cert.color {
            return false;
        }
        if (0..t).any(|j| !s.contains(&cert.core[(i + j) % n])) {
            return false;
        }
    }
    true
}

/// Color of a sorted edge by scanning the colex enumeration (no ranking).
pub fn naive_color(h: &ColoredHypergraph, e: &[usize]) -> u8 {
    let k = colex_index(e);
    h.colors()[k]
}

/// Colex position of a sorted set: sum of C(e_i, i+1).
pub fn colex_index(e: &[usize]) -> usize {
    e.iter().enumerate().map(|(i, &v)| binom(v, i + 1)).sum()
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Counts of each color over the 4-sets containing `{a, b}`.
pub fn pair_counts(h: &ColoredHypergraph, a: usize, b: usize) -> [usize; 3] {
    let n = h.n();
    let mut out = [0; 3];
    let others: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            let mut e = [a, b, others[i], others[j]];
            e.sort_unstable();
            out[naive_color(h, &e) as usize - 1] += 1;
        }
    }
    out
}

/// Mutations that always break a valid certificate.
pub const MUTATIONS: usize = 7;

/// Applies mutation `kind` (mod [`MUTATIONS`]) at a position derived from
/// `pick`. Returns `None` when the instance offers no such mutation (e.g. no
/// edge of another color contains the window).
pub fn mutate(h: &ColoredHypergraph, cert: &BergeCertificate, kind: usize, pick: usize) -> Option<BergeCertificate> {
    let n = h.n();
    let r = h.r();
    let t = cert.t;
    let mut m = cert.clone();
    let i = pick % n;
    match kind % MUTATIONS {
        // Duplicate another position's edge.
        0 => m.edges[i] = cert.edges[(i + 1) % n].clone(),
        // Claim a different color.
        1 => {
            if h.c() < 2 {
                return None;
            }
            m.color = cert.color % h.c() as u8 + 1;
        }
        // Repeat a core vertex.
        2 => m.core[i] = cert.core[(i + 1) % n],
        // Drop an edge.
        3 => {
            m.edges.remove(i);
        }
        // An edge of the right color that misses a window vertex.
        4 => {
            let missing = cert.core[(i + pick / n % t) % n];
            let used: HashSet<Vec<usize>> = cert.edges.iter().cloned().collect();
            let e = all_sets(n, r).into_iter().find(|e| {
                !e.contains(&missing) && naive_color(h, e) == cert.color && !used.contains(e)
            });
            let e = e.or_else(|| all_sets(n, r).into_iter().find(|e| !e.contains(&missing)))?;
            m.edges[i] = e;
        }
        // An edge holding the window but of another color.
        5 => {
            let win: Vec<usize> = (0..t).map(|j| cert.core[(i + j) % n]).collect();
            let e = all_sets(n, r)
                .into_iter()
                .find(|e| win.iter().all(|v| e.contains(v)) && naive_color(h, e) != cert.color)?;
            m.edges[i] = e;
        }
        // A vertex out of range.
        _ => {
            let e = &mut m.edges[i];
            let last = e.len() - 1;
            e[last] = n + pick % 3;
        }
    }
    Some(m)
}

/// All sorted `r`-subsets of `0..n`.
pub fn all_sets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Exhaustive existence check written independently of the library search:
/// every cyclic order with `v_1 = 0`, every color, simple augmenting-path
/// matching of windows to edges.
pub fn naive_exists(h: &ColoredHypergraph, t: usize) -> bool {
    let n = h.n();
    let sets = all_sets(n, h.r());
    let mut perm: Vec<usize> = (1..n).collect();
    for color in 1..=h.c() as u8 {
        let edges: Vec<&Vec<usize>> = sets.iter().filter(|e| naive_color(h, e) == color).collect();
        if edges.len() < n {
            continue;
        }
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            if found {
                return;
            }
            let mut core = vec![0];
            core.extend_from_slice(p);
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|i| {
                    (0..edges.len())
                        .filter(|&k| (0..t).all(|j| edges[k].contains(&core[(i + j) % n])))
                        .collect()
                })
                .collect();
            if perfect(&adj, edges.len()) {
                found = true;
            }
        });
        if found {
            return true;
        }
    }
    false
}

fn permute(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == a.len() {
        f(a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permute(a, k + 1, f);
        a.swap(k, i);
    }
}

fn perfect(adj: &[Vec<usize>], right: usize) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut owner))
}
