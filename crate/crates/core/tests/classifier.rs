use bimorph::classifier::{classify, therefore_direct, therefore_via_star_bound, Branch, ClassifyParams, CoconeMethod};
use bimorph::extension::SearchBudget;
use bimorph::graph::Complement;
use bimorph::invariants::star_number_bounded;
use bimorph::{Adjacency, CountableGraph};

fn g(s: &str) -> CountableGraph {
    CountableGraph::parse(s).unwrap()
}

const CANNED: [(&str, Branch); 8] = [
    ("rado", Branch::MbEvidence),
    ("complement(rado)", Branch::MbEvidence),
    ("gnp(p=0.5,seed=1)", Branch::MbEvidence),
    ("cliques(3)", Branch::UhEvidence),
    ("complement(cliques(3))", Branch::UhEvidence),
    ("empty", Branch::UhEvidence),
    ("complete", Branch::UhEvidence),
    ("union(cliques(2),cliques(3))", Branch::Inconclusive),
];

#[test]
fn canned_branches_are_sound_and_complement_coherent() {
    let params = ClassifyParams::default();
    for (spec, expect) in CANNED {
        let graph = g(spec);
        let r = classify(&graph, &params).unwrap_or_else(|e| panic!("{spec}: {e}"));
        assert_eq!(r.branch, expect, "{spec}");
        assert_eq!(r.exit_code(), if expect == Branch::Inconclusive { 2 } else { 0 });
        let flipped = [&r.m_verdict, &r.complement_m_verdict];
        assert!(!(flipped[0].is_witnessed() && flipped[1].is_refuted()), "{spec}");
        assert!(!(flipped[0].is_refuted() && flipped[1].is_witnessed()), "{spec}");
        assert!(r.sigma.validate(&graph) && r.alpha.validate(&graph), "{spec}");

        match r.branch {
            Branch::MbEvidence => {
                assert!(r.m_verdict.is_witnessed() && r.triangle_verdict.witnessed && r.therefore_verdict.witnessed);
                let p = r.artifacts.m_extension.as_ref().unwrap();
                assert!(p.check_edge_preserving(&graph).is_ok());
                assert!((0..params.depth).all(|v| p.in_domain(v) && p.in_range(v)));
                for s in &r.artifacts.triangle_samples {
                    let w = s.witness.unwrap();
                    assert!(s.set.iter().all(|&x| graph.adjacent(w, x)));
                }
                let co = Complement(&graph);
                for s in &r.artifacts.therefore_samples {
                    let w = s.witness.unwrap();
                    assert!(!s.set.contains(&w) && s.set.iter().all(|&x| co.adjacent(w, x)));
                }
            }
            Branch::UhEvidence => assert!(r.m_verdict.is_refuted()),
            Branch::Inconclusive => assert!(!r.m_verdict.is_refuted()),
        }

        if expect != Branch::Inconclusive {
            let c = classify(&graph.complement(), &params).unwrap();
            assert_eq!(c.branch, expect, "complement of {spec}");
        }
    }
}

#[test]
fn star_bound_and_direct_cocones_agree() {
    let params = ClassifyParams::default();
    let window = SearchBudget::new(params.sigma_horizon).unwrap();
    for spec in ["empty", "complete", "cliques(2)", "cliques(3)", "cliques(5)", "union(cliques(2),cliques(2))"] {
        let graph = g(spec);
        let sigma = star_number_bounded(&graph, params.sigma_max, &window).value as usize;
        let direct = therefore_direct(&graph, &params);
        let (star, audits) = therefore_via_star_bound(&graph, sigma, &params);
        assert_eq!(star.witnessed, direct.witnessed, "{spec}");
        for a in &audits {
            assert!(a.blocked.len() <= a.bound);
        }
        for (s, d) in star.samples.iter().zip(&direct.samples) {
            assert_eq!(s.set, d.set);
            assert_eq!(s.witness.is_some(), d.witness.is_some(), "{spec} {:?}", s.set);
        }
    }
}

#[test]
fn small_star_numbers_use_the_audited_path() {
    let r = classify(&g("cliques(3)"), &ClassifyParams::default()).unwrap();
    assert_eq!(r.sigma.value, 1);
    assert_eq!(r.therefore_verdict.method, Some(CoconeMethod::StarBound));
    assert!(r.therefore_verdict.witnessed);
    assert!(!r.artifacts.star_bound_audits.is_empty());
    let r = classify(&CountableGraph::rado(), &ClassifyParams::default()).unwrap();
    assert_eq!(r.therefore_verdict.method, Some(CoconeMethod::Direct));
}

#[test]
fn reports_serialize_with_stable_tags() {
    let r = classify(&g("cliques(3)"), &ClassifyParams::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["branch"], "UH-evidence");
    assert_eq!(v["m_verdict"]["verdict"], "refuted-analytic");
    assert_eq!(v["m_verdict"]["rule"], "block-permutation");
}
