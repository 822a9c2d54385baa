//! The finite lab checked against naive enumerations over all maps.

use std::collections::BTreeSet;

use bimorph::extension::{extend_to_partial_bimorphism, find_cocone, find_cone, SearchBudget};
use bimorph::graph::all_graphs;
use bimorph::lab::{
    all_cocones, all_cones, extends_to_bimorphism, graph_id, EndoKind, Lab, LabCaps, LocalKind, RepresentedKey,
};
use bimorph::morphism::{classify_map, LocalMorphism, MorphismKind};
use bimorph::{FiniteGraph, Vertex};
use itertools::Itertools;

fn all_maps(dom: &[usize], n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    dom.iter().map(move |_| 0..n).multi_cartesian_product().chain((dom.is_empty()).then(Vec::new))
}

fn hom(g: &FiniteGraph, dom: &[usize], img: &[usize]) -> bool {
    (0..dom.len()).all(|i| (0..dom.len()).all(|j| !g.has_edge(dom[i], dom[j]) || g.has_edge(img[i], img[j])))
}

fn injective(img: &[usize]) -> bool {
    img.iter().collect::<BTreeSet<_>>().len() == img.len()
}

fn reflects(g: &FiniteGraph, dom: &[usize], img: &[usize]) -> bool {
    (0..dom.len()).all(|i| (0..dom.len()).all(|j| g.has_edge(dom[i], dom[j]) || !g.has_edge(img[i], img[j])))
}

fn is_endo(g: &FiniteGraph, img: &[usize], kind: EndoKind) -> bool {
    let dom: Vec<usize> = (0..g.order()).collect();
    let h = hom(g, &dom, img);
    let onto = img.iter().collect::<BTreeSet<_>>().len() == g.order();
    match kind {
        EndoKind::H => h,
        EndoKind::M => h && injective(img),
        EndoKind::I => h && injective(img) && reflects(g, &dom, img),
        EndoKind::E => h && onto,
        EndoKind::B => h && injective(img) && onto,
        EndoKind::A => h && injective(img) && reflects(g, &dom, img) && onto,
    }
}

fn is_local(g: &FiniteGraph, dom: &[usize], img: &[usize], kind: LocalKind) -> bool {
    let h = hom(g, dom, img);
    match kind {
        LocalKind::H => h,
        LocalKind::M => h && injective(img),
        LocalKind::I => h && injective(img) && reflects(g, dom, img),
    }
}

fn naive_endos(g: &FiniteGraph, kind: EndoKind) -> Vec<Vec<usize>> {
    let dom: Vec<usize> = (0..g.order()).collect();
    all_maps(&dom, g.order()).filter(|img| is_endo(g, img, kind)).collect()
}

fn naive_xy(g: &FiniteGraph, x: LocalKind, y: EndoKind) -> bool {
    let endos = naive_endos(g, y);
    (1..=g.order()).all(|k| {
        (0..g.order()).combinations(k).all(|dom| {
            all_maps(&dom, g.order())
                .filter(|img| is_local(g, &dom, img, x))
                .all(|img| endos.iter().any(|e| dom.iter().zip(&img).all(|(&d, &i)| e[d] == i)))
        })
    })
}

fn graphs_up_to(n: usize) -> Vec<FiniteGraph> {
    (1..=n).flat_map(|k| all_graphs(k).unwrap()).collect()
}

#[test]
fn endomorphisms_match_naive_enumeration() {
    let lab = Lab::default();
    for g in graphs_up_to(4) {
        for kind in EndoKind::ALL {
            let mut got = lab.endomorphisms(&g, kind).unwrap();
            got.sort();
            assert_eq!(got, naive_endos(&g, kind), "{} {kind}", graph_id(&g));
        }
    }
}

#[test]
fn bimorphisms_are_exactly_automorphisms() {
    let lab = Lab::default();
    for g in graphs_up_to(5) {
        let bim: BTreeSet<Vec<Vertex>> = lab.bimorphism_monoid(&g).unwrap().into_iter().map(|f| f.img).collect();
        let aut: BTreeSet<Vec<Vertex>> = naive_endos(&g, EndoKind::A)
            .into_iter()
            .map(|img| img.into_iter().map(|v| v as Vertex).collect())
            .collect();
        assert_eq!(bim, aut, "{}", graph_id(&g));
    }
}

#[test]
fn homogeneity_verdicts_match_naive_search() {
    let lab = Lab::default();
    for g in graphs_up_to(4) {
        for x in LocalKind::ALL {
            for y in EndoKind::ALL {
                let v = lab.check_xy_homogeneity(&g, x, y).unwrap();
                assert_eq!(v.holds, naive_xy(&g, x, y), "{} ({x},{y})", graph_id(&g));
                if let Some(f) = &v.counterexample {
                    let dom: Vec<usize> = f.dom.iter().map(|&d| d as usize).collect();
                    let img: Vec<usize> = f.img.iter().map(|&i| i as usize).collect();
                    assert!(is_local(&g, &dom, &img, x));
                }
            }
        }
    }
}

#[test]
fn table_and_search_paths_agree() {
    let table = Lab::default();
    let search = Lab::new(LabCaps { restriction_table: 0, ..LabCaps::default() });
    for g in all_graphs(5).unwrap() {
        for x in LocalKind::ALL {
            for y in EndoKind::ALL {
                let a = table.check_xy_homogeneity(&g, x, y).unwrap();
                let b = search.check_xy_homogeneity(&g, x, y).unwrap();
                assert_eq!(a, b, "{} ({x},{y})", graph_id(&g));
            }
        }
    }
}

#[test]
fn ultrahomogeneous_counts() {
    let lab = Lab::default();
    for (n, expect) in [(1, 1), (2, 2), (3, 2), (4, 4), (5, 3), (6, 6)] {
        let count = all_graphs(n)
            .unwrap()
            .iter()
            .filter(|g| lab.check_xy_homogeneity(g, LocalKind::I, EndoKind::A).unwrap().holds)
            .count();
        assert_eq!(count, expect, "order {n}");
    }
}

#[test]
fn represented_sets_compose() {
    let lab = Lab::default();
    for g in graphs_up_to(5).into_iter().filter(|g| g.order() >= 2) {
        let rs = lab.represented_sets(&g, 2).unwrap();
        for (k1, s1) in &rs.sets {
            if k1.source == k1.target && k1.e == k1.e_prime {
                assert!(s1.contains(&vec![0, 1]), "identity missing in {}", graph_id(&g));
            }
            for (k2, s2) in rs.sets.iter().filter(|(k2, _)| k2.source == k1.target && k2.e == k1.e_prime) {
                let key = RepresentedKey { source: k1.source, target: k2.target, e: k1.e, e_prime: k2.e_prime };
                for f in s1 {
                    for h in s2 {
                        let hf: Vec<Vertex> = f.iter().map(|&v| h[v as usize]).collect();
                        assert!(rs.sets[&key].contains(&hf), "{} {k1:?} {k2:?}", graph_id(&g));
                    }
                }
            }
        }
    }
}

#[test]
fn cone_searches_agree_with_the_lab() {
    let budget = SearchBudget::default();
    for g in graphs_up_to(5) {
        let n = g.order();
        for k in 0..=n.min(3) {
            for xs in (0..n).combinations(k) {
                let vs: Vec<Vertex> = xs.iter().map(|&x| x as Vertex).collect();
                let cone = find_cone(&g, &vs, &budget).map(|v| v as usize);
                assert_eq!(cone, all_cones(&g, &xs).first().copied());
                let cocone = find_cocone(&g, &vs, &budget).map(|v| v as usize);
                assert_eq!(cocone, all_cocones(&g, &xs).first().copied());
            }
        }
    }
}

#[test]
fn engine_successes_are_bimorphism_restrictions() {
    let budget = SearchBudget::default();
    let mut successes = 0;
    for g in graphs_up_to(5) {
        let n = g.order() as Vertex;
        for (a, b) in (0..n).tuple_combinations() {
            for (c, d) in (0..n).permutations(2).map(|p| (p[0], p[1])) {
                let f = LocalMorphism::new(vec![a, b], vec![c, d]).unwrap();
                if classify_map(&f, &g, &g).unwrap() < MorphismKind::Monomorphism {
                    continue;
                }
                if let Ok(p) = extend_to_partial_bimorphism(&g, &f, n, &budget) {
                    successes += 1;
                    assert!(p.check_edge_preserving(&g).is_ok());
                    assert_eq!(p.len(), g.order());
                    assert!(extends_to_bimorphism(&g, &f), "{} {f:?}", graph_id(&g));
                }
            }
        }
    }
    assert!(successes > 0);
}
