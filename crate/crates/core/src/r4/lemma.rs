//! A vertex `v` lying on at most one edge of some color: pass to the
//! 2-colored 3-uniform link of `v`, find a monochromatic Hamiltonian
//! Berge-cycle there, and put `v` back.

use std::collections::HashSet;

use crate::certificate::{verify_berge_certificate, BergeCertificate, VerificationReport};
use crate::hamiltonicity::{find_hamiltonian_path, PathOutcome, SearchConfig, SimpleGraph};
use crate::hypergraph::ColoredHypergraph;
use crate::matching::Matcher;
use crate::search::{generic_search, Attempt, GenericOutcome};
use crate::shadow::ShadowMulticoloring;
use crate::subset::{for_each_superset, Subsets};

use super::gamma::{sorted4, Edge4};
use super::R4Error;

type Triple = [usize; 3];

fn sorted3(a: usize, b: usize, c: usize) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Edges of each color through every vertex, read off the pair shadow
/// (each edge through `v` contributes to `r - 1` pairs at `v`).
pub fn vertex_color_counts(s: &ShadowMulticoloring) -> Vec<Vec<u64>> {
    let (n, c) = (s.n(), s.c());
    let mut acc = vec![vec![0u64; c]; n];
    for (k, pair) in Subsets::new(n, 2).enumerate() {
        for (i, &cnt) in s.counts_at(k).iter().enumerate() {
            acc[pair[0]][i] += cnt as u64;
            acc[pair[1]][i] += cnt as u64;
        }
    }
    let per = (s.r() - 1) as u64;
    for row in &mut acc {
        row.iter_mut().for_each(|x| *x /= per);
    }
    acc
}

/// First vertex having a color on at most one of its edges, with the rarest
/// such color (lowest label on ties).
pub fn lemma_scan(s: &ShadowMulticoloring) -> Option<(usize, u8, u64)> {
    vertex_color_counts(s).iter().enumerate().find_map(|(v, row)| {
        let (i, &k) = row.iter().enumerate().min_by_key(|&(i, &k)| (k, i))?;
        (k <= 1).then_some((v, i as u8 + 1, k))
    })
}

/// The transposition of colors `1` and `i` as `sigma[old - 1] = new`.
fn swap_with_one(i: u8) -> [u8; 3] {
    let mut sigma = [1u8, 2, 3];
    sigma.swap(0, i as usize - 1);
    sigma
}

/// Certificate in one of the two colors other than `i`, for a vertex `v`
/// lying on at most one edge of color `i`. Returns the certificate and the
/// sub-case label.
pub fn lemma_a_construct(
    h: &ColoredHypergraph,
    v: usize,
    i: u8,
    cfg: &SearchConfig,
    log: &mut Vec<Attempt>,
) -> Result<(BergeCertificate, String), R4Error> {
    let n = h.n();
    if h.r() != 4 || h.c() != 3 || n < 85 {
        return Err(R4Error::InvalidParams(format!("need r=4, c=3, n>=85; got r={} c={} n={n}", h.r(), h.c())));
    }
    if v >= n || !(1..=3).contains(&i) {
        return Err(R4Error::InvalidParams(format!("vertex {v} / color {i} out of range")));
    }
    let mut at_v: Vec<Edge4> = Vec::new();
    for_each_superset(&[v], 4, n, |e| {
        if h.color_of_sorted(e) == i {
            at_v.push([e[0], e[1], e[2], e[3]]);
        }
    });
    if at_v.len() > 1 {
        return Err(R4Error::InvalidParams(format!("color {i} is on {} edges at vertex {v}", at_v.len())));
    }
    let sigma = swap_with_one(i);
    let h1 = h.recolored(&sigma);
    let e_v = at_v.first().copied();

    // Link of v: vertex j of the link is j (j < v) or j + 1 (j >= v).
    let orig = |j: usize| if j < v { j } else { j + 1 };
    let link = ColoredHypergraph::from_fn(n - 1, 3, 3, |t| {
        let e = sorted4(v, orig(t[0]), orig(t[1]), orig(t[2]));
        if Some(e) == e_v {
            2
        } else {
            h1.color_of_sorted(&e)
        }
    })
    .expect("link parameters are valid");
    let found = match generic_search(&link, 2, cfg, log) {
        GenericOutcome::Found(c) => c,
        GenericOutcome::Unresolved => {
            return Err(R4Error::FallbackExhausted(format!("no Berge-cycle found in the link of vertex {v}")))
        }
    };
    let mut cycle = found.clone();
    cycle.core.iter_mut().for_each(|x| *x = orig(*x));
    for e in &mut cycle.edges {
        e.iter_mut().for_each(|x| *x = orig(*x));
    }
    let (mut cert, label) = reinsert_vertex(&h1, v, &cycle, e_v, cfg)?;
    cert.color = sigma[cert.color as usize - 1];
    match verify_berge_certificate(&cert, h, 2) {
        VerificationReport::Pass => Ok((cert, label)),
        VerificationReport::Fail(viol) => Err(R4Error::Verification(viol)),
    }
}

struct Link<'a> {
    h: &'a ColoredHypergraph,
    v: usize,
    xs: Vec<usize>,
    es: Vec<Triple>,
    pos: Vec<usize>,
    in_c: HashSet<Triple>,
}

impl Link<'_> {
    fn m(&self) -> usize {
        self.xs.len()
    }

    /// Actual color of `T ∪ {v}`.
    fn color(&self, t: Triple) -> u8 {
        self.h.color_of_sorted(&sorted4(self.v, t[0], t[1], t[2]))
    }

    fn consecutive(&self, a: usize, b: usize) -> bool {
        let m = self.m();
        let (pa, pb) = (self.pos[a], self.pos[b]);
        (pa + 1) % m == pb || (pb + 1) % m == pa
    }

    fn with_v(&self, t: Triple) -> Vec<usize> {
        sorted4(self.v, t[0], t[1], t[2]).to_vec()
    }

    /// A triple through the given vertices of the requested color that is
    /// not an edge of the link cycle.
    fn fresh(&self, t: Triple, col: u8) -> bool {
        !self.in_c.contains(&t) && self.color(t) == col
    }
}

/// Puts `v` back into a Berge-cycle of its link.
///
/// `h` must already be relabeled so that `v` lies on at most one color-1
/// edge, `e_v`. `link_cycle` is a Berge-cycle of color 2 or 3 on `V ∖ {v}`
/// whose edges are triples, its colors taken from `h` with `e_v` counted as
/// color 2.
pub fn reinsert_vertex(
    h: &ColoredHypergraph,
    v: usize,
    link_cycle: &BergeCertificate,
    e_v: Option<Edge4>,
    cfg: &SearchConfig,
) -> Result<(BergeCertificate, String), R4Error> {
    let n = h.n();
    let col = link_cycle.color;
    if link_cycle.core.len() != n - 1 || !(col == 2 || col == 3) {
        return Err(R4Error::InvalidParams("link cycle must be a color-2/3 cycle on the other vertices".into()));
    }
    let other = 5 - col;
    let mut pos = vec![usize::MAX; n];
    for (k, &x) in link_cycle.core.iter().enumerate() {
        pos[x] = k;
    }
    let es: Vec<Triple> = link_cycle.edges.iter().map(|e| sorted3(e[0], e[1], e[2])).collect();
    let link = Link { h, v, xs: link_cycle.core.clone(), in_c: es.iter().copied().collect(), es, pos };
    let special: Option<Triple> = e_v.map(|e| {
        let rest: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
        sorted3(rest[0], rest[1], rest[2])
    });
    let case = if col == 3 { 1 } else { 2 };
    let finish = |core: Vec<usize>, edges: Vec<Vec<usize>>, color: u8, label: String| {
        let cert = BergeCertificate { color, core, edges, t: 2 };
        match verify_berge_certificate(&cert, h, 2) {
            VerificationReport::Pass => Ok((cert, label)),
            VerificationReport::Fail(viol) => Err(R4Error::Verification(viol)),
        }
    };

    let special_in_c = special.is_some_and(|t| link.in_c.contains(&t));
    if !special_in_c {
        if let Some((core, edges, opt)) = insert(&link, col, special) {
            return finish(core, edges, col, format!("case-{case} insert-{opt}"));
        }
        // A handful of anchors; each attempt is a full path search.
        let anchors = link.xs.iter().copied().filter(|a| !special.is_some_and(|t| t.contains(a))).take(4);
        for a in anchors {
            if let Some((core, edges)) = reroute(&link, a, other, cfg) {
                return finish(core, edges, other, format!("case-{case} reroute"));
            }
        }
        return Err(R4Error::FallbackExhausted(format!("no re-insertion of vertex {v} found")));
    }

    // The link cycle uses e_v's triple to cover (a, b).
    let sp = special.expect("checked");
    let j = link.es.iter().position(|&t| t == sp).expect("in cycle");
    let m = link.m();
    let a = link.xs[j];
    let b = link.xs[(j + 1) % m];
    let through = |x: usize, avoid: Option<Triple>| -> Option<Triple> {
        for p in 0..n {
            for q in p + 1..n {
                if [p, q].iter().any(|&u| u == v || u == x) {
                    continue;
                }
                let t = sorted3(x, p, q);
                if Some(t) != avoid && link.fresh(t, col) {
                    return Some(t);
                }
            }
        }
        None
    };
    if let Some(t1) = through(a, None) {
        if let Some(t2) = through(b, Some(t1)) {
            // a, v, b, x_3, ..., x_{n-1}
            let mut core = vec![a, v, b];
            let mut edges = vec![link.with_v(t1), link.with_v(t2)];
            for s in 1..m {
                let idx = (j + s) % m;
                if s >= 2 {
                    core.push(link.xs[idx]);
                }
                edges.push(link.with_v(link.es[idx]));
            }
            return finish(core, edges, col, "case-2 option-D".into());
        }
    }
    for anchor in [a, b] {
        if let Some((core, edges)) = reroute(&link, anchor, other, cfg) {
            return finish(core, edges, other, "case-2 reroute".into());
        }
    }
    Err(R4Error::FallbackExhausted(format!("no re-insertion of vertex {v} found")))
}

/// Core, backing edges and the insertion pattern used.
type Inserted = (Vec<usize>, Vec<Vec<usize>>, &'static str);

/// Insertion of `v` keeping the link cycle's color: tries every rotation
/// whose first vertex avoids `special`, and the three insertion patterns.
fn insert(link: &Link, col: u8, special: Option<Triple>) -> Option<Inserted> {
    let m = link.m();
    for k in 0..m {
        let x = |j: usize| link.xs[(k + j) % m];
        let e = |j: usize| link.es[(k + j) % m];
        if special.is_some_and(|t| t.contains(&x(0))) {
            continue;
        }
        if (0..m).any(|j| link.color(e(j)) != col) {
            continue;
        }
        // x1, v, x2, ..., x_{n-1} with the new edge at (x1, v).
        let after_first = |t: Triple| {
            let mut core = vec![x(0), link.v];
            core.extend((1..m).map(x));
            let mut edges = vec![link.with_v(t)];
            edges.extend((0..m).map(|j| link.with_v(e(j))));
            (core, edges)
        };
        for p in 2..m.saturating_sub(1) {
            for q in p + 2..m.saturating_sub(1) {
                let t = sorted3(x(0), x(p), x(q));
                if link.fresh(t, col) {
                    let (core, edges) = after_first(t);
                    return Some((core, edges, "A"));
                }
            }
        }
        for l in 2..m - 1 {
            if l == m - 2 {
                continue;
            }
            let t = sorted3(x(m - 1), x(0), x(l));
            if link.fresh(t, col) {
                // v, x1, ..., x_{n-1}
                let mut core = vec![link.v];
                core.extend((0..m).map(x));
                let mut edges = vec![link.with_v(t)];
                edges.extend((0..m).map(|j| link.with_v(e(j))));
                return Some((core, edges, "B"));
            }
        }
        for l in 3..m - 1 {
            let t = sorted3(x(0), x(1), x(l));
            if link.fresh(t, col) {
                let (core, edges) = after_first(t);
                return Some((core, edges, "B'"));
            }
        }
    }
    None
}

/// New cyclic order `v, y_2, ..., y_{n-1}, a` in color `col`: consecutive
/// `y`s are joined through `{v, a, y_i, y_{i+1}}` and must not be
/// consecutive on the link cycle; the three positions touching `v` or `a`
/// are matched from the remaining edges through `{v, a}`.
fn reroute(link: &Link, a: usize, col: u8, cfg: &SearchConfig) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
    let h = link.h;
    let n = h.n();
    let v = link.v;
    let rest: Vec<usize> = (0..n).filter(|&u| u != v && u != a).collect();
    let mut g = SimpleGraph::new(rest.len());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let (b, c) = (rest[i], rest[j]);
            if !link.consecutive(b, c) && h.color_of_sorted(&sorted4(v, a, b, c)) == col {
                g.add_edge(i, j);
            }
        }
    }
    let path = match find_hamiltonian_path(&g, |_| true, |i| !link.consecutive(rest[i], a), cfg) {
        PathOutcome::Found(p) => p,
        _ => return None,
    };
    let ys: Vec<usize> = path.iter().map(|&i| rest[i]).collect();
    let mut core = vec![v];
    core.extend(&ys);
    core.push(a);
    let len = core.len();
    let mut edges: Vec<Option<Edge4>> = vec![None; len];
    let mut taken: HashSet<Edge4> = HashSet::new();
    for i in 1..len - 2 {
        let e = sorted4(v, a, core[i], core[i + 1]);
        taken.insert(e);
        edges[i] = Some(e);
    }
    // Positions (v, y_2), (y_{n-1}, a) and (a, v).
    let open = [0, len - 2, len - 1];
    let mut candidates: Vec<Edge4> = Vec::new();
    for_each_superset(&[v.min(a), v.max(a)], 4, n, |e| {
        let e: Edge4 = [e[0], e[1], e[2], e[3]];
        if h.color_of_sorted(&e) == col && !taken.contains(&e) {
            candidates.push(e);
        }
    });
    let mut m = Matcher::new(candidates.len());
    for &i in &open {
        let (p, q) = (core[i], core[(i + 1) % len]);
        let nb: Vec<usize> = (0..candidates.len()).filter(|&k| candidates[k].contains(&p) && candidates[k].contains(&q)).collect();
        if !m.push_left(nb) {
            return None;
        }
    }
    for (&i, k) in open.iter().zip(m.assignment()) {
        edges[i] = Some(candidates[k.expect("matched")]);
    }
    Some((core, edges.into_iter().map(|e| e.expect("assigned").to_vec()).collect()))
}
