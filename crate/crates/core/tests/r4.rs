mod common;

use berge_core::hypergraph::{random_coloring, ColoredHypergraph, Params};
use berge_core::r4::*;
use berge_core::shadow::build_shadow;

use common::{is_valid_berge, pair_counts};

fn run(h: &ColoredHypergraph) -> (berge_core::certificate::BergeCertificate, ConstructionTrace) {
    let (cert, trace) = r4_find(h, &R4Config::default()).expect("certificate");
    assert!(is_valid_berge(h, &cert, 2), "independent check rejected {:?}", trace);
    assert!(trace.breaches.is_empty(), "breaches: {:?}", trace.breaches);
    (cert, trace)
}

fn pivot_of(h: &ColoredHypergraph) -> (PivotSelection, BClassification) {
    let s = build_shadow(h, 2).unwrap();
    let ProfileResult::Profiles(p) = compute_u_profiles(&s).unwrap() else { panic!("single good pair") };
    let (classes, out) = classify_and_pivot(&p).unwrap();
    let PivotOutcome::Pivot(sel) = out else { panic!("B-cover") };
    (sel, classes)
}

fn gamma_of(h: &ColoredHypergraph) -> GammaConstruction {
    let s = build_shadow(h, 2).unwrap();
    let (sel, classes) = pivot_of(h);
    if sel.u23.is_empty() {
        construct_gamma_case1(h, &s, &sel).unwrap()
    } else {
        construct_gamma_case2(h, &s, &sel, &classes).unwrap()
    }
}

fn case1(lows: &[usize], overlap: bool) -> ColoredHypergraph {
    ProfileFixture { low_degrees: lows.to_vec(), overlap, ..ProfileFixture::case1(10, 40, 1) }.build().unwrap()
}

fn case2(low: Option<usize>, t_degree: usize, overlap: bool) -> ColoredHypergraph {
    ProfileFixture { low_degrees: low.into_iter().collect(), t_degree, overlap, ..ProfileFixture::case2(1, 40, 2) }
        .build()
        .unwrap()
}

#[test]
fn fixture_pair_classes_recount() {
    let f = ProfileFixture { low_degrees: vec![0], t_degree: 1, ..ProfileFixture::case2(1, 40, 2) };
    let h = f.build().unwrap();
    let (t, p, q, r) = f.layout();
    let good = |v: usize| -> Vec<u8> {
        let c = pair_counts(&h, 0, v);
        (1..=3u8).filter(|&k| c[k as usize - 1] >= 3).collect()
    };
    for &v in &t {
        assert_eq!(good(v), vec![2, 3]);
    }
    for &v in &p {
        assert_eq!(good(v), vec![1, 2]);
    }
    for &v in q.iter().step_by(7) {
        assert_eq!(good(v), vec![1, 3]);
    }
    for &v in r.iter().step_by(5) {
        assert_eq!(good(v), vec![1, 2, 3]);
    }
}

#[test]
fn random_coloring_takes_b_cover() {
    let h = random_coloring(&Params::new(85, 4, 2, 3).unwrap(), 1).unwrap();
    let (_, trace) = run(&h);
    assert_eq!(trace.branch, Branch::BCover);
}

#[test]
fn case1_subcases() {
    let table: [(&[usize], bool, &str); 7] = [
        (&[], false, "case-1 E6-i r1=0 r2=0"),
        (&[2], false, "case-1 E6-i r1=1 r2=0"),
        (&[1, 1], false, "case-1 E6-i r1=2 r2=2"),
        (&[0], false, "case-1 E6-ii r1=3 r2=0"),
        (&[0, 1], false, "case-1 E6-ii r1=3 r2=2"),
        (&[0, 0], false, "case-1 E6-ii r1=3 r2=3 disjoint"),
        (&[0, 0], true, "case-1 E6-ii r1=3 r2=3 overlap"),
    ];
    for (lows, overlap, want) in table {
        let (cert, trace) = run(&case1(lows, overlap));
        assert_eq!(trace.branch, Branch::Case1);
        assert_eq!(trace.subcase, want);
        assert!(trace.fallbacks.is_empty());
        assert_eq!(cert.color, 1);
    }
}

#[test]
fn case2_subcases() {
    for (low, tier, r) in [(None, "i", 0), (Some(1), "ii", 2), (Some(0), "iii", 3)] {
        for l in 0..=2 {
            let mut variants = vec![(false, if l == 2 && r >= 2 { " disjoint" } else { "" })];
            if l == 2 && r >= 2 {
                variants.push((true, " overlap"));
            }
            for (overlap, tail) in variants {
                let (_, trace) = run(&case2(low, 2 - l, overlap));
                assert_eq!(trace.branch, Branch::Case2);
                assert_eq!(trace.subcase, format!("case-2 E6-{tier} r={r} l={l}{tail}"));
                assert!(trace.fallbacks.is_empty());
            }
        }
    }
}

#[test]
fn case2_early_exit_and_w_star() {
    let h = ProfileFixture { b1_pairs: true, ..ProfileFixture::case2(1, 40, 3) }.build().unwrap();
    let (cert, trace) = run(&h);
    assert_eq!(trace.subcase, "case-2 B1-early-exit");
    assert_eq!(cert.color, 2);

    let h = ProfileFixture::case2(1, 40, 3).build().unwrap();
    let g = gamma_of(&h);
    let w = g.w.expect("|U123| = 42 puts a star center in play");
    let (_, trace) = run(&h);
    assert!(trace.decisions.iter().any(|d| d == &format!("E7 star centered at {w}")));
}

#[test]
fn gamma_structure() {
    // Every Γ-edge has one provenance; fixed backings are color-1 edges
    // through both endpoints.
    for h in [case1(&[0, 0], false), case2(Some(0), 0, false), case2(Some(1), 0, true)] {
        let g = gamma_of(&h);
        let mut count = 0;
        for u in 0..h.n() {
            for v in g.graph.neighbors(u).filter(|&v| v > u) {
                count += 1;
                let p = g.provenance_of(u, v).expect("provenance");
                if let Backing::Fixed(e) = p.backing {
                    assert!(e.contains(&u) && e.contains(&v));
                    assert_eq!(common::naive_color(&h, &e), 1);
                }
            }
        }
        assert_eq!(count, g.provenance.len());
        assert!(g.degree_floor_breaches().is_empty());
    }
}

#[test]
fn case1_repair_set_sizes() {
    // U123 empty: no repair at all.
    let h = ProfileFixture::case1(20, 64, 5).build().unwrap();
    let g = gamma_of(&h);
    assert_eq!(g.subcase, "case-1 U123-empty");
    assert!(g.e6().is_empty() && g.d_union().is_empty());

    // r1 <= 2, r2 = 0: nothing to repair.
    let g = gamma_of(&case1(&[2], false));
    assert_eq!((g.r[0], g.r[1]), (1, 0));
    assert!(g.e6().is_empty() && g.d_sets.is_empty());

    // r1 = r2 = 3 with disjoint reservations: three E6 edges, three D-sets.
    let g = gamma_of(&case1(&[0, 0], false));
    assert_eq!(g.e6().len(), 3);
    assert_eq!(g.d_sets.len(), 3);
    assert!(g.w_sets[0].iter().all(|e| !g.w_sets[1].contains(e)));
}

#[test]
fn case2_repair_set_sizes() {
    // |U12| = 1: no E1 edges.
    let g = gamma_of(&case2(None, 2, false));
    assert!(g.provenance.values().all(|p| p.tag != Tag::E1));

    // r = 0, l = 0: nothing to repair.
    assert_eq!((g.r[0], g.l), (0, Some(0)));
    assert!(g.e6().is_empty() && g.d_sets.is_empty());

    // r = 3, l = 2, W and U disjoint: two edges each side, four D-sets.
    let g = gamma_of(&case2(Some(0), 0, false));
    assert_eq!((g.r[0], g.l), (3, Some(2)));
    assert_eq!(g.e6_prime.len(), 2);
    assert_eq!(g.e6_double_prime.len(), 2);
    assert_eq!(g.d_sets.len(), 4);
    assert!(g.d_sets.iter().all(|(_, d)| !d.is_empty()));
}

#[test]
fn extension_ignores_direction() {
    let h = case1(&[0, 1], false);
    let g = gamma_of(&h);
    let berge_core::hamiltonicity::HamOutcome::Found(cycle) =
        berge_core::hamiltonicity::find_hamiltonian_cycle_with(&g.graph, &Default::default())
    else {
        panic!("Γ is Hamiltonian")
    };
    let mut rev = cycle.clone();
    rev.reverse();
    for c in [cycle, rev] {
        let cert = extend_to_berge(&g, &c, &h).unwrap();
        assert!(is_valid_berge(&h, &cert, 2));
    }
}

#[test]
fn link_reduction_branches() {
    let (cert, trace) = run(&near_missing_color(85, 5, 3, 1, 9));
    assert_eq!(trace.branch, Branch::NearMissingColor);
    assert!(trace.subcase.starts_with("case-1"), "{}", trace.subcase);
    assert_ne!(cert.color, 3);

    // No edge at v has color 1 and the link is all color 2.
    let (cert, trace) = run(&monochromatic_link(85, 5, 1, 2, 0, 9));
    assert!(trace.subcase.starts_with("case-2"), "{}", trace.subcase);
    assert_eq!(cert.color, 2);

    let (_, trace) = run(&near_missing_color(85, 5, 2, 1, 9));
    assert_eq!(trace.subcase, "case-2 option-D");
}

#[test]
fn absent_color_reduces() {
    let (cert, trace) = run(&without_color(85, 3, 4));
    assert_eq!(trace.branch, Branch::ColorRelabelReduction);
    assert!(cert.color == 1 || cert.color == 2);
}

#[test]
fn single_good_pair_falls_back() {
    let (_, trace) = run(&single_good_pair(85, 4));
    assert_eq!(trace.branch, Branch::SingleGoodFallback);
    assert!(!trace.fallbacks.is_empty());
}

#[test]
fn parameters_checked() {
    let h = random_coloring(&Params::new(84, 4, 2, 3).unwrap(), 0).unwrap();
    assert!(matches!(r4_find(&h, &R4Config::default()), Err(R4Error::InvalidParams(_))));
    let h = random_coloring(&Params::new(85, 4, 2, 2).unwrap(), 0).unwrap();
    assert!(matches!(r4_find(&h, &R4Config::default()), Err(R4Error::InvalidParams(_))));
}

#[test]
fn relabeling_is_transparent() {
    let base = ProfileFixture { low_degrees: vec![0, 1], ..ProfileFixture::case1(10, 40, 6) };
    let (c0, t0) = run(&base.build().unwrap());
    for perm in [[2u8, 3, 1], [3, 1, 2], [1, 3, 2]] {
        let h = ProfileFixture { permute: Some(perm), ..base.clone() }.build().unwrap();
        let (c, t) = run(&h);
        assert_eq!(c.color, perm[c0.color as usize - 1]);
        assert_eq!(c.core, c0.core);
        assert_eq!(t.subcase, t0.subcase);
    }
}

#[test]
fn deterministic() {
    let h = case2(Some(1), 1, false);
    let a = run(&h);
    let b = run(&h);
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
}

#[test]
fn branch_names_in_json() {
    let (_, trace) = run(&case1(&[], false));
    let v: serde_json::Value = serde_json::from_str(&trace.to_json()).unwrap();
    assert_eq!(v["branch"], "case-1");
    assert_eq!(v["subcase"], "case-1 E6-i r1=0 r2=0");
    assert_eq!(serde_json::to_value(Branch::Case2).unwrap(), "case-2");
    assert_eq!(serde_json::to_value(Branch::SingleGoodFallback).unwrap(), "single-good-fallback");
}
