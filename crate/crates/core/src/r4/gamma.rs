//! The auxiliary graph Γ on `V(H)`: every Hamiltonian cycle of Γ extends to
//! a color-1 Hamiltonian Berge-cycle of `H` (colors already relabeled so the
//! pivot satisfies `|U23| <= |U12| <= |U13|`).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::hamiltonicity::SimpleGraph;
use crate::hypergraph::ColoredHypergraph;
use crate::shadow::ShadowMulticoloring;
use crate::subset::for_each_superset;

use super::profile::{BClassification, PivotSelection};
use super::R4Error;

pub type Edge4 = [usize; 4];

pub(crate) fn sorted4(a: usize, b: usize, c: usize, d: usize) -> Edge4 {
    let mut e = [a, b, c, d];
    e.sort_unstable();
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
}

/// How the Berge edge of a Γ-edge is chosen during extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Backing {
    /// This exact hyperedge.
    Fixed(Edge4),
    /// `{x, y, v, u}` with `u ∈ U13` outside the exclusion list.
    YStar,
    /// Any unused color-1 edge containing the pair (Hall matching).
    Pool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tag: Tag,
    pub backing: Backing,
}

#[derive(Debug, Clone)]
pub struct GammaConstruction {
    pub case: u8,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub u23: Option<usize>,
    /// Center of the Case 2 `E7` star.
    pub w: Option<usize>,
    pub u12: Vec<usize>,
    pub u13: Vec<usize>,
    pub graph: SimpleGraph,
    /// First-match provenance per undirected Γ-edge `(min, max)`.
    pub provenance: BTreeMap<(usize, usize), Provenance>,
    /// `U123` ordered by degree in Γ' (the graph of `E1..E5`), then id.
    pub w_order: Vec<usize>,
    pub gamma_prime_degree: Vec<usize>,
    /// `r_1, r_2` (Case 1) or `r` (Case 2).
    pub r: Vec<usize>,
    /// `l` (Case 2 only).
    pub l: Option<usize>,
    /// Reserved color-1 edges: `W_1, W_2` (Case 1) or `W` (Case 2).
    pub w_sets: Vec<Vec<Edge4>>,
    /// `U` (Case 2 only).
    pub u_set: Vec<Edge4>,
    pub e6_prime: Vec<(usize, usize)>,
    pub e6_double_prime: Vec<(usize, usize)>,
    /// Named D-sets (`D_w1`, `D'_w2`, ...), possibly empty.
    pub d_sets: Vec<(String, Vec<usize>)>,
    pub subcase: String,
}

impl GammaConstruction {
    pub fn d_union(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.d_sets.iter().flat_map(|(_, s)| s.iter().copied()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn provenance_of(&self, u: usize, v: usize) -> Option<&Provenance> {
        self.provenance.get(&(u.min(v), u.max(v)))
    }

    pub fn w1(&self) -> Option<usize> {
        self.w_order.first().copied()
    }

    pub fn e6(&self) -> Vec<(usize, usize)> {
        let mut all: Vec<(usize, usize)> =
            self.e6_prime.iter().chain(&self.e6_double_prime).map(|&(a, b)| (a.min(b), a.max(b))).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Degree floors the proof guarantees; returns the violated ones.
    pub fn degree_floor_breaches(&self) -> Vec<String> {
        let n = self.graph.n();
        let mut out = Vec::new();
        let mut check = |v: usize, floor: usize, what: &str| {
            let d = self.graph.degree(v);
            if d < floor {
                out.push(format!("deg({what}={v}) = {d} < {floor}"));
            }
        };
        check(self.x, if self.case == 1 { n - 6 } else { n - 11 }, "x");
        for &u in self.u12.iter().filter(|&&u| u != self.y) {
            check(u, n - 8, "u12");
        }
        for &u in self.u13.iter().filter(|&&u| u != self.z) {
            check(u, n - 7, "u13");
        }
        out
    }
}

struct Builder<'a> {
    h: &'a ColoredHypergraph,
    g: SimpleGraph,
    prov: BTreeMap<(usize, usize), Provenance>,
}

impl<'a> Builder<'a> {
    fn new(h: &'a ColoredHypergraph) -> Self {
        Builder { h, g: SimpleGraph::new(h.n()), prov: BTreeMap::new() }
    }

    fn is_one(&self, e: Edge4) -> bool {
        self.h.color_of_sorted(&e) == 1
    }

    /// Adds `uv` unless an earlier rule already produced it.
    fn add(&mut self, u: usize, v: usize, tag: Tag, backing: Backing) {
        if u == v {
            return;
        }
        let key = (u.min(v), u.max(v));
        if self.prov.contains_key(&key) {
            return;
        }
        self.g.add_edge(u, v);
        self.prov.insert(key, Provenance { tag, backing });
    }

    fn rule_with_backing(&mut self, u: usize, v: usize, tag: Tag, e: Edge4) {
        if self.is_one(e) {
            self.add(u, v, tag, Backing::Fixed(e));
        }
    }

    /// Backing edges of the Γ'-edges at `w` produced by `tags`, with the
    /// corresponding neighbors (ascending).
    fn backings_at(&self, w: usize, tags: &[Tag]) -> Vec<(usize, Edge4)> {
        let mut out = Vec::new();
        for v in self.g.neighbors(w) {
            let p = self.prov[&(w.min(v), w.max(v))];
            if let (true, Backing::Fixed(e)) = (tags.contains(&p.tag), p.backing) {
                out.push((v, e));
            }
        }
        out
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.g.has_edge(u, v)
    }
}

/// First `count` color-1 edges containing `base` (colex order), skipping
/// `exclude`.
fn first_color1(h: &ColoredHypergraph, base: &[usize], count: usize, exclude: &[Edge4]) -> Vec<Edge4> {
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    let mut b = base.to_vec();
    b.sort_unstable();
    for_each_superset(&b, 4, h.n(), |e| {
        if out.len() < count && h.color_of_sorted(e) == 1 {
            let e: Edge4 = [e[0], e[1], e[2], e[3]];
            if !exclude.contains(&e) {
                out.push(e);
            }
        }
    });
    out
}

fn minus(g: &Edge4, drop: &[usize]) -> Vec<usize> {
    g.iter().copied().filter(|v| !drop.contains(v)).collect()
}

/// Picks a vertex of `g` outside `drop`: most repeated among `rep`, then
/// not already a Γ-neighbor of `center`, then lowest id.
fn pick(b: &Builder, g: &Edge4, drop: &[usize], rep: &[Edge4], center: usize) -> usize {
    minus(g, drop)
        .into_iter()
        .min_by_key(|&v| {
            let count = rep.iter().filter(|e| e.contains(&v)).count();
            (std::cmp::Reverse(count), b.has(center, v), v)
        })
        .expect("a 4-set minus at most three vertices is nonempty")
}

fn reserve(
    h: &ColoredHypergraph,
    base: &[usize],
    count: usize,
    exclude: &[Edge4],
    vertex: usize,
) -> Result<Vec<Edge4>, R4Error> {
    let got = first_color1(h, base, count, exclude);
    if got.len() < count {
        return Err(R4Error::ReservationUnsatisfiable { vertex, needed: count, found: got.len() });
    }
    Ok(got)
}

/// The single Γ'-neighbor of a degree-one vertex (through rules `tags`).
fn sole_neighbor(b: &Builder, w: usize, tags: &[Tag]) -> (usize, Edge4) {
    let at = b.backings_at(w, tags);
    debug_assert_eq!(at.len(), 1);
    at[0]
}

/// Moves the elements matching `first` to the front, keeping order otherwise.
fn front<T: Copy>(v: &mut [T], key: impl Fn(&T) -> bool) {
    v.sort_by_key(|e| !key(e));
}

struct Six {
    e6p: Vec<(usize, usize, Edge4)>,
    e6pp: Vec<(usize, usize, Edge4)>,
    d_sets: Vec<(String, Vec<usize>)>,
    tail: String,
}

impl Six {
    fn new() -> Self {
        Six { e6p: vec![], e6pp: vec![], d_sets: vec![], tail: String::new() }
    }
    fn d(&mut self, name: &str, set: Vec<usize>) {
        self.d_sets.push((name.to_string(), set));
    }
}

fn common_rules(b: &mut Builder, p: &PivotSelection, e1_sources: &[usize], e34_a: &[bool]) {
    let n = b.h.n();
    let (x, y, z) = (p.x, p.y, p.z);
    for &u in e1_sources {
        for v in 0..n {
            if [u, x, y, z].contains(&v) {
                continue;
            }
            b.rule_with_backing(u, v, Tag::E1, sorted4(x, z, u, v));
        }
    }
    for &u in p.u13.iter().skip(1) {
        for v in 0..n {
            if [u, x, y].contains(&v) {
                continue;
            }
            b.rule_with_backing(u, v, Tag::E2, sorted4(x, y, u, v));
        }
    }
    for (v, &in_a) in e34_a.iter().enumerate() {
        if in_a || [x, y, z].contains(&v) {
            continue;
        }
        b.rule_with_backing(z, v, Tag::E3, sorted4(x, y, z, v));
    }
    for (v, &in_a) in e34_a.iter().enumerate() {
        if in_a && v != y && v != x && v != z {
            b.rule_with_backing(y, v, Tag::E4, sorted4(x, y, z, v));
        }
    }
    for &v in p.u13.iter().skip(1) {
        b.add(y, v, Tag::E5, Backing::YStar);
    }
}

fn order_by_degree(g: &SimpleGraph, set: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut order = set.to_vec();
    order.sort_by_key(|&w| (deg[w], w));
    (order, deg)
}

const W_TAGS: [Tag; 4] = [Tag::E1, Tag::E2, Tag::E3, Tag::E4];
const U23_TAGS: [Tag; 3] = [Tag::E1, Tag::E2, Tag::E3];

pub fn construct_gamma_case1(
    h: &ColoredHypergraph,
    _s: &ShadowMulticoloring,
    p: &PivotSelection,
) -> Result<GammaConstruction, R4Error> {
    if !p.u23.is_empty() {
        return Err(R4Error::InvalidParams("Case 1 needs U23 empty".into()));
    }
    let n = h.n();
    let (x, y, z) = (p.x, p.y, p.z);
    let mut in_a = vec![false; n];
    for &v in p.a.iter().chain(&p.a_prime) {
        in_a[v] = true;
    }
    let mut b = Builder::new(h);
    common_rules(&mut b, p, &p.u12[1..], &in_a);
    let (w_order, gp_deg) = order_by_degree(&b.g, &p.u123);
    let w1 = w_order.first().copied();
    let w2 = w_order.get(1).copied();
    let r_of = |w: Option<usize>| w.map_or(0, |w| 3usize.saturating_sub(gp_deg[w]));
    let (r1, r2) = (r_of(w1), r_of(w2));

    let excl = |b: &Builder, w: usize| -> Vec<Edge4> { b.backings_at(w, &W_TAGS).into_iter().map(|(_, e)| e).collect() };
    let mut wset1 = match w1 {
        Some(w) => reserve(h, &[x, w], r1, &excl(&b, w), w)?,
        None => vec![],
    };
    let mut wset2 = match w2 {
        Some(w) => reserve(h, &[x, w], r2, &excl(&b, w), w)?,
        None => vec![],
    };

    let mut six = Six::new();
    if let Some(w1) = w1 {
        if r1 <= 2 {
            six.tail = format!("E6-i r1={r1} r2={r2}");
            let w2v = w2.unwrap_or(usize::MAX);
            match r2 {
                2 => {
                    let (v, _) = sole_neighbor(&b, w2v, &W_TAGS);
                    let g21 = wset2[0];
                    let t1 = pick(&b, &g21, &[x, w2v, v], &[g21], w2v);
                    six.e6pp.push((w2v, t1, g21));
                    six.d("D_w2", minus(&g21, &[x, w2v, t1]));
                }
                3 => {
                    let (g21, g22) = (wset2[0], wset2[1]);
                    let t1 = pick(&b, &g21, &[x, w2v], &[g21, g22], w2v);
                    let t2 = pick(&b, &g22, &[x, w2v, t1], &[g21, g22], w2v);
                    six.e6pp.push((w2v, t1, g21));
                    six.e6pp.push((w2v, t2, g22));
                    six.d("D_w2", minus(&g21, &[x, w2v, t1]));
                    six.d("D'_w2", minus(&g22, &[x, w2v, t2]));
                }
                _ => {}
            }
        } else {
            six.tail = format!("E6-ii r1=3 r2={r2}");
            match (r2, w2) {
                (2, Some(w2)) => {
                    let (v, ev) = sole_neighbor(&b, w2, &W_TAGS);
                    let w2p = [wset2[0], wset2[1], ev];
                    // g13 must avoid W2'.
                    if let Some(j) = wset1.iter().position(|g| !w2p.contains(g)) {
                        let g = wset1.remove(j);
                        wset1.push(g);
                    }
                    let g13 = wset1[2];
                    debug_assert!(!w2p.contains(&g13));
                    let g21 = wset2[0];
                    let u = pick(&b, &g13, &[x, w1], &[g13], w1);
                    let t1 = pick(&b, &g21, &[x, w2, v], &[g21], w2);
                    six.e6p.push((w1, u, g13));
                    six.e6pp.push((w2, t1, g21));
                    six.d("D_w1", minus(&g13, &[x, w1, u]));
                    six.d("D_w2", minus(&g21, &[x, w2, t1]));
                }
                (3, Some(w2)) => {
                    let disjoint = wset1.iter().all(|g| !wset2.contains(g));
                    if disjoint {
                        six.tail.push_str(" disjoint");
                        let g11 = wset1[0];
                        let (g21, g22) = (wset2[0], wset2[1]);
                        let u = pick(&b, &g11, &[x, w1], &[g11], w1);
                        let t1 = pick(&b, &g21, &[x, w2], &[g21, g22], w2);
                        let t2 = pick(&b, &g22, &[x, w2, t1], &[g21, g22], w2);
                        six.e6p.push((w1, u, g11));
                        six.e6pp.push((w2, t1, g21));
                        six.e6pp.push((w2, t2, g22));
                        six.d("D_w1", minus(&g11, &[x, w1, u]));
                        six.d("D_w2", minus(&g21, &[x, w2, t1]));
                        six.d("D'_w2", minus(&g22, &[x, w2, t2]));
                    } else {
                        six.tail.push_str(" overlap");
                        let shared2 = wset2.clone();
                        wset1.sort_by_key(|g| (!g.contains(&w2), !shared2.contains(g)));
                        let g11 = wset1[0];
                        front(&mut wset2, |g| *g == g11);
                        let g22 = wset2[1];
                        let t1 = pick(&b, &g22, &[x, w1, w2], &[g22], w2);
                        six.e6p.push((w1, w2, g11));
                        six.e6pp.push((w2, w1, g11));
                        six.e6pp.push((w2, t1, g22));
                        six.d("D_w1", minus(&g11, &[x, w1, w2]));
                        six.d("D_w2", minus(&g22, &[x, w1, w2, t1]));
                    }
                }
                _ => {
                    let g11 = wset1[0];
                    let u = pick(&b, &g11, &[x, w1], &[g11], w1);
                    six.e6p.push((w1, u, g11));
                    six.d("D_w1", minus(&g11, &[x, w1, u]));
                }
            }
        }
    } else {
        six.tail = "U123-empty".into();
    }
    for &(a, t, g) in six.e6p.iter().chain(&six.e6pp) {
        b.add(a, t, Tag::E6, Backing::Fixed(g));
    }
    let d: HashSet<usize> = six.d_sets.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    for v in 0..n {
        let keep = (![x, y, z].contains(&v) && !d.contains(&v)) || Some(v) == w1 || Some(v) == w2;
        if keep && v != x {
            b.add(x, v, Tag::E7, Backing::Pool);
        }
    }
    let mut rs = vec![r1];
    if w2.is_some() {
        rs.push(r2);
    }
    Ok(GammaConstruction {
        case: 1,
        x,
        y,
        z,
        u23: None,
        w: None,
        u12: p.u12.clone(),
        u13: p.u13.clone(),
        graph: b.g,
        provenance: b.prov,
        w_order,
        gamma_prime_degree: gp_deg,
        r: rs,
        l: None,
        w_sets: vec![wset1, wset2],
        u_set: vec![],
        e6_prime: six.e6p.iter().map(|&(a, t, _)| (a, t)).collect(),
        e6_double_prime: six.e6pp.iter().map(|&(a, t, _)| (a, t)).collect(),
        d_sets: six.d_sets,
        subcase: format!("case-1 {}", six.tail),
    })
}

/// Whether Case 2's early exit applies: `(n-2)/2 <= |U123| <= (n-1)/2` and
/// `U123 ⊆ B1`.
pub fn case2_early_exit(n: usize, p: &PivotSelection, classes: &BClassification) -> bool {
    let m = p.u123.len();
    let in_range = 2 * m + 2 >= n && 2 * m < n;
    in_range && !p.u123.is_empty() && p.u123.iter().all(|&v| classes.in_b1(v))
}

pub fn construct_gamma_case2(
    h: &ColoredHypergraph,
    s: &ShadowMulticoloring,
    p: &PivotSelection,
    classes: &BClassification,
) -> Result<GammaConstruction, R4Error> {
    let Some(u23) = p.u23_vertex.filter(|_| p.u23.len() == 1) else {
        return Err(R4Error::InvalidParams("Case 2 needs |U23| = 1".into()));
    };
    let n = h.n();
    let (x, y, z) = (p.x, p.y, p.z);
    let m = p.u123.len();
    let in_range = 2 * m + 2 >= n && 2 * m < n;
    let w = if in_range { p.u123.iter().copied().find(|&v| !classes.in_b1(v)) } else { None };

    let mut in_a = vec![false; n];
    for &v in &p.a {
        in_a[v] = true;
    }
    let mut b = Builder::new(h);
    let e1_sources: Vec<usize> = p.u12_vertex.into_iter().collect();
    common_rules(&mut b, p, &e1_sources, &in_a);
    let (w_order, gp_deg) = order_by_degree(&b.g, &p.u123);
    let w1 = w_order.first().copied();
    let r = w1.map_or(0, |w| 3usize.saturating_sub(gp_deg[w]));
    let l = 2usize.saturating_sub(gp_deg[u23]);

    let mut hs = match w1 {
        Some(w1) => {
            let excl: Vec<Edge4> = b.backings_at(w1, &W_TAGS).into_iter().map(|(_, e)| e).collect();
            reserve(h, &[x, w1], r, &excl, w1)?
        }
        None => vec![],
    };
    let u_excl: Vec<Edge4> = b.backings_at(u23, &U23_TAGS).into_iter().map(|(_, e)| e).collect();
    let mut gs = reserve(h, &[u23], l, &u_excl, u23)?;

    let mut six = Six::new();
    let w1v = w1.unwrap_or(usize::MAX);
    let tier = match r {
        0 | 1 => "i",
        2 => "ii",
        _ => "iii",
    };
    six.tail = format!("E6-{tier} r={r} l={l}");
    // Helpers for the l-part shared by several sub-cases.
    let l_one = |b: &Builder, six: &mut Six, g1: Edge4| {
        let (v, _) = sole_neighbor(b, u23, &U23_TAGS);
        let t1 = pick(b, &g1, &[x, u23, v], &[g1], u23);
        six.e6pp.push((u23, t1, g1));
        six.d("D_u23", minus(&g1, &[x, u23, t1]));
    };
    let l_two = |b: &Builder, six: &mut Six, g1: Edge4, g2: Edge4| {
        let t1 = pick(b, &g1, &[x, u23], &[g1, g2], u23);
        let t2 = pick(b, &g2, &[x, u23, t1], &[g1, g2], u23);
        six.e6pp.push((u23, t1, g1));
        six.e6pp.push((u23, t2, g2));
        six.d("D_u23", minus(&g1, &[x, u23, t1]));
        six.d("D'_u23", minus(&g2, &[x, u23, t2]));
    };
    match r {
        0 | 1 => match l {
            1 => l_one(&b, &mut six, gs[0]),
            2 => l_two(&b, &mut six, gs[0], gs[1]),
            _ => {}
        },
        2 => {
            let (v, ev) = sole_neighbor(&b, w1v, &W_TAGS);
            match l {
                0 => {
                    let h1 = hs[0];
                    let u1 = pick(&b, &h1, &[x, w1v, v], &[h1], w1v);
                    six.e6p.push((w1v, u1, h1));
                    six.d("D_w1", minus(&h1, &[x, w1v, u1]));
                }
                1 => {
                    let g1 = gs[0];
                    hs.sort_by_key(|e| (!e.contains(&u23), *e != g1));
                    let h2 = hs[1];
                    let u1 = pick(&b, &h2, &[x, w1v, v], &[h2], w1v);
                    six.e6p.push((w1v, u1, h2));
                    six.d("D_w1", minus(&h2, &[x, w1v, u1]));
                    l_one(&b, &mut six, g1);
                }
                _ => {
                    let wp = [hs[0], hs[1], ev];
                    let shared: Vec<Edge4> = gs.iter().copied().filter(|g| wp.contains(g)).collect();
                    if shared.is_empty() {
                        six.tail.push_str(" disjoint");
                        let h1 = hs[0];
                        let u1 = pick(&b, &h1, &[x, w1v, v], &[h1], w1v);
                        six.e6p.push((w1v, u1, h1));
                        six.d("D_w1", minus(&h1, &[x, w1v, u1]));
                        l_two(&b, &mut six, gs[0], gs[1]);
                    } else {
                        six.tail.push_str(" overlap");
                        let s0 = shared[0];
                        front(&mut hs, |e| *e == s0);
                        front(&mut gs, |e| *e == s0);
                        let (h1, g1, g2) = (hs[0], gs[0], gs[1]);
                        let t1 = pick(&b, &g2, &[x, u23, w1v], &[g1, g2], u23);
                        six.e6p.push((w1v, u23, h1));
                        six.e6pp.push((u23, w1v, h1));
                        six.e6pp.push((u23, t1, g2));
                        six.d("D_w1", minus(&h1, &[x, w1v, u23]));
                        six.d("D_u23", minus(&g2, &[x, u23, t1]));
                    }
                }
            }
        }
        _ => match l {
            0 => {
                let (h1, h2) = (hs[0], hs[1]);
                let u1 = pick(&b, &h1, &[x, w1v], &[h1, h2], w1v);
                let u2 = pick(&b, &h2, &[x, w1v, u1], &[h1, h2], w1v);
                six.e6p.push((w1v, u1, h1));
                six.e6p.push((w1v, u2, h2));
                six.d("D_w1", minus(&h1, &[x, w1v, u1]));
                six.d("D'_w1", minus(&h2, &[x, w1v, u2]));
            }
            1 => {
                let g1 = gs[0];
                front(&mut hs, |e| *e == g1);
                let (h2, h3) = (hs[1], hs[2]);
                let u1 = pick(&b, &h2, &[x, w1v], &[h2, h3], w1v);
                let u2 = pick(&b, &h3, &[x, w1v, u1], &[h2, h3], w1v);
                six.e6p.push((w1v, u1, h2));
                six.e6p.push((w1v, u2, h3));
                six.d("D_w1", minus(&h2, &[x, w1v, u1]));
                six.d("D'_w1", minus(&h3, &[x, w1v, u2]));
                l_one(&b, &mut six, g1);
            }
            _ => {
                let disjoint = hs.iter().all(|e| !gs.contains(e));
                if disjoint {
                    six.tail.push_str(" disjoint");
                    let (h1, h2) = (hs[0], hs[1]);
                    let u1 = pick(&b, &h1, &[x, w1v], &[h1, h2], w1v);
                    let u2 = pick(&b, &h2, &[x, w1v, u1], &[h1, h2], w1v);
                    six.e6p.push((w1v, u1, h1));
                    six.e6p.push((w1v, u2, h2));
                    six.d("D_w1", minus(&h1, &[x, w1v, u1]));
                    six.d("D'_w1", minus(&h2, &[x, w1v, u2]));
                    l_two(&b, &mut six, gs[0], gs[1]);
                } else {
                    six.tail.push_str(" overlap");
                    let in_u = gs.clone();
                    hs.sort_by_key(|e| (!e.contains(&u23), !in_u.contains(e)));
                    let h1 = hs[0];
                    front(&mut gs, |e| *e == h1);
                    let (h3, g1, g2) = (hs[2], gs[0], gs[1]);
                    debug_assert!(!gs.contains(&h3));
                    let u1 = pick(&b, &h3, &[x, w1v], &[h3], w1v);
                    let t1 = pick(&b, &g2, &[x, u23, w1v], &[g1, g2], u23);
                    six.e6p.push((w1v, u23, h1));
                    six.e6p.push((w1v, u1, h3));
                    six.e6pp.push((u23, w1v, h1));
                    six.e6pp.push((u23, t1, g2));
                    six.d("D_w1", minus(&h1, &[x, w1v, u23]));
                    six.d("D'_w1", minus(&h3, &[x, w1v, u1]));
                    six.d("D_u23", minus(&g2, &[x, u23, w1v, t1]));
                }
            }
        },
    }
    for &(a, t, g) in six.e6p.iter().chain(&six.e6pp) {
        b.add(a, t, Tag::E6, Backing::Fixed(g));
    }
    if let Some(w) = w {
        for v in 0..n {
            if v != x && v != w && s.pair_good(v, w, 1) {
                b.add(w, v, Tag::E7, Backing::Pool);
            }
        }
    }
    let d: HashSet<usize> = six.d_sets.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    for v in 0..n {
        let excluded = [x, y, z, u23].contains(&v) || Some(v) == w || d.contains(&v);
        if (!excluded || Some(v) == w1) && v != x {
            b.add(x, v, Tag::E8, Backing::Pool);
        }
    }
    Ok(GammaConstruction {
        case: 2,
        x,
        y,
        z,
        u23: Some(u23),
        w,
        u12: p.u12.clone(),
        u13: p.u13.clone(),
        graph: b.g,
        provenance: b.prov,
        w_order,
        gamma_prime_degree: gp_deg,
        r: vec![r],
        l: Some(l),
        w_sets: vec![hs],
        u_set: gs,
        e6_prime: six.e6p.iter().map(|&(a, t, _)| (a, t)).collect(),
        e6_double_prime: six.e6pp.iter().map(|&(a, t, _)| (a, t)).collect(),
        d_sets: six.d_sets,
        subcase: format!("case-2 {}", six.tail),
    })
}
