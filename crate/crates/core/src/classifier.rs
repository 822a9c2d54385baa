//! Bounded evidence for the dichotomy between graphs whose bimorphisms can turn a
//! nonedge into an edge and graphs whose bimorphisms are all automorphisms.
//!
//! The pivot is the two-point monomorphism `m` (least nonedge onto least edge). When
//! the extension engine carries `m` to a large partial bimorphism and both cone
//! properties are witnessed, the report carries MB-evidence. When a registered
//! analytic rule shows that no bimorphism can create an edge, it carries UH-evidence.
//! Anything else is inconclusive. Nothing here proves homogeneity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{
    cocone_via_star_bound, extend_to_partial_bimorphism, PartialBimorphism, SearchBudget, StarBoundCocone,
};
use crate::graph::{Adjacency, Complement, CountableGraph, GraphSpec, Vertex};
use crate::invariants::{
    check_therefore_property, check_triangle_property, independence_number_bounded, sample_sets, star_number_bounded,
    BoundedInvariant, IndependentSetStream, PropertyParams, PropertyReport, Sampling, SetSample,
};
use crate::morphism::{canonical_m, LocalMorphism};

/// Whether `m` is represented, as far as bounded search and registered rules can tell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MVerdict {
    /// `m` extended to a partial bimorphism covering `{0..depth-1}` on both sides.
    Witnessed {
        depth: Vertex,
    },
    RefutedAnalytic {
        rule: String,
        justification: String,
    },
    /// The search gave up at this bound.
    Unknown {
        horizon: Vertex,
    },
}

impl MVerdict {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, MVerdict::Witnessed { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, MVerdict::RefutedAnalytic { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "MB-evidence")]
    MbEvidence,
    #[serde(rename = "UH-evidence")]
    UhEvidence,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::MbEvidence => "MB-evidence",
            Branch::UhEvidence => "UH-evidence",
            Branch::Inconclusive => "inconclusive",
        })
    }
}

/// How co-cones were searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoconeMethod {
    Direct,
    StarBound,
}

/// Summary of a cone-property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub witnessed: bool,
    pub sampling: Sampling,
    pub sets: usize,
    /// First sampled set without a witness.
    pub failed_on: Option<Vec<Vertex>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<CoconeMethod>,
}

impl PropertyVerdict {
    fn from_report(r: &PropertyReport, method: Option<CoconeMethod>) -> Self {
        PropertyVerdict {
            witnessed: r.witnessed,
            sampling: r.sampling,
            sets: r.samples.len(),
            failed_on: r.first_failure().map(|s| s.set.clone()),
            method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifacts {
    pub m_map: Option<LocalMorphism>,
    pub m_extension: Option<PartialBimorphism>,
    pub triangle_samples: Vec<SetSample>,
    pub therefore_samples: Vec<SetSample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub star_bound_audits: Vec<StarBoundCocone>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    pub spec: String,
    pub m_verdict: MVerdict,
    pub complement_m_verdict: MVerdict,
    pub triangle_verdict: PropertyVerdict,
    pub therefore_verdict: PropertyVerdict,
    pub sigma: BoundedInvariant,
    pub alpha: BoundedInvariant,
    pub branch: Branch,
    pub artifacts: Artifacts,
}

impl EvidenceReport {
    /// 0 when a branch is assigned, 2 when inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.branch {
            Branch::Inconclusive => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("m is {} on the graph but {} on its complement", tag(.graph), tag(.complement))]
    CrossCheck { graph: MVerdict, complement: MVerdict, report: Box<EvidenceReport> },
    #[error("evidence failed re-validation: {0}")]
    Unsound(String),
}

impl ClassifyError {
    pub fn exit_code(&self) -> i32 {
        3
    }
}

fn tag(v: &MVerdict) -> &'static str {
    match v {
        MVerdict::Witnessed { .. } => "witnessed",
        MVerdict::RefutedAnalytic { .. } => "refuted",
        MVerdict::Unknown { .. } => "unknown",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyParams {
    /// Target for extending `m`: both sides must cover `{0..depth-1}`.
    pub depth: Vertex,
    /// Where the least nonedge and least edge are looked for.
    pub m_horizon: Vertex,
    pub budget: SearchBudget,
    pub property: PropertyParams,
    pub sigma_max: usize,
    pub sigma_horizon: Vertex,
    pub alpha_max: usize,
    pub alpha_horizon: Vertex,
    /// Star numbers at or above this use direct co-cone search.
    pub sigma_split: u64,
    /// Horizon of the independent-set stream on the star-bound path.
    pub stream_horizon: Vertex,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams {
            depth: 16,
            m_horizon: 64,
            budget: SearchBudget::default().with_scan_limit(1 << 18),
            property: PropertyParams::default(),
            sigma_max: 6,
            sigma_horizon: 64,
            alpha_max: 8,
            alpha_horizon: 64,
            sigma_split: 3,
            stream_horizon: 1 << 12,
        }
    }
}

/// Exact values attached to a rule; `None` means infinite or not registered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Registered {
    pub sigma: Option<u64>,
    pub alpha: Option<u64>,
}

/// A registered analytic rule: a spec pattern, its verdict on `m`, and known invariants.
pub struct AnalyticRule {
    pub name: &'static str,
    pub justification: &'static str,
    pub applies: fn(&GraphSpec) -> bool,
    pub values: fn(&GraphSpec) -> Registered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Finite(u64),
    Infinite,
}

fn has_no_edge(s: &GraphSpec) -> bool {
    match s {
        GraphSpec::Empty | GraphSpec::Cliques(1) => true,
        GraphSpec::Complement(x) => has_no_nonedge(x),
        GraphSpec::Union(a, b) => has_no_edge(a) && has_no_edge(b),
        _ => false,
    }
}

fn has_no_nonedge(s: &GraphSpec) -> bool {
    match s {
        GraphSpec::Complete => true,
        GraphSpec::Complement(x) => has_no_edge(x),
        _ => false,
    }
}

/// Common size of the cliques when `s` is a disjoint union of equal cliques.
fn uniform_block(s: &GraphSpec) -> Option<Block> {
    match s {
        GraphSpec::Empty => Some(Block::Finite(1)),
        GraphSpec::Cliques(k) => Some(Block::Finite(*k)),
        GraphSpec::Complete => Some(Block::Infinite),
        GraphSpec::Complement(x) if has_no_edge(x) => Some(Block::Infinite),
        GraphSpec::Union(a, b) => uniform_block(a).filter(|&x| Some(x) == uniform_block(b)),
        _ => None,
    }
}

fn is_block_graph(s: &GraphSpec) -> bool {
    !has_no_edge(s) && !has_no_nonedge(s) && uniform_block(s).is_some()
}

fn is_co_block_graph(s: &GraphSpec) -> bool {
    matches!(s, GraphSpec::Complement(x) if is_block_graph(x))
}

fn co_block_values(s: &GraphSpec) -> Registered {
    match s {
        GraphSpec::Complement(x) => match uniform_block(x) {
            Some(Block::Finite(k)) => Registered { sigma: Some(k), alpha: Some(k) },
            _ => Registered::default(),
        },
        _ => Registered::default(),
    }
}

/// Rules in the order they are tried. Patterns match the normalized spec.
pub static RULES: &[AnalyticRule] = &[
    AnalyticRule {
        name: "no-nonedge",
        justification: "the graph is complete, so m has no domain and every bimorphism is an automorphism",
        applies: has_no_nonedge,
        values: |_| Registered { sigma: Some(1), alpha: Some(1) },
    },
    AnalyticRule {
        name: "no-edge",
        justification: "the graph has no edge, so m has no image and every bimorphism is an automorphism",
        applies: has_no_edge,
        values: |_| Registered { sigma: Some(0), alpha: None },
    },
    AnalyticRule {
        name: "block-permutation",
        justification: "the graph is a disjoint union of equal cliques; an edge-preserving bijection maps \
                        each clique into a clique and so permutes them, never joining two cliques",
        applies: is_block_graph,
        values: |_| Registered { sigma: Some(1), alpha: None },
    },
    AnalyticRule {
        name: "co-block-permutation",
        justification: "the complement is a disjoint union of equal cliques, which does not represent m; \
                        a graph represents m exactly when its complement does",
        applies: is_co_block_graph,
        values: co_block_values,
    },
];

/// First registered rule matching the normalized form of `spec`.
pub fn match_rule(spec: &GraphSpec) -> Option<&'static AnalyticRule> {
    let s = spec.normalized();
    RULES.iter().find(|r| (r.applies)(&s))
}

pub fn registered_values(spec: &GraphSpec) -> Registered {
    let s = spec.normalized();
    match_rule(&s).map(|r| (r.values)(&s)).unwrap_or_default()
}

/// Verdict on `m` together with the extension that witnesses it, if any.
pub fn represents_m_with_witness(
    g: &CountableGraph,
    params: &ClassifyParams,
) -> (MVerdict, Option<LocalMorphism>, Option<PartialBimorphism>) {
    if let Some(rule) = match_rule(g.spec()) {
        let v = MVerdict::RefutedAnalytic { rule: rule.name.into(), justification: rule.justification.into() };
        return (v, None, None);
    }
    let Some(m) = canonical_m(g, params.m_horizon) else {
        return (MVerdict::Unknown { horizon: params.m_horizon }, None, None);
    };
    match extend_to_partial_bimorphism(g, &m, params.depth, &params.budget) {
        Ok(p) => (MVerdict::Witnessed { depth: params.depth }, Some(m), Some(p)),
        Err(e) => {
            log::info!("m did not extend on {}: {e}", g.spec());
            (MVerdict::Unknown { horizon: params.depth }, Some(m), None)
        }
    }
}

/// Whether `m` is represented, bounded by `depth` and `budget`.
pub fn represents_m_bounded(g: &CountableGraph, depth: Vertex, budget: &SearchBudget) -> MVerdict {
    let params = ClassifyParams { depth, budget: *budget, ..Default::default() };
    represents_m_with_witness(g, &params).0
}

/// Co-cone check read off the greedy independent set, with a blocking audit per set.
pub fn therefore_via_star_bound<G: Adjacency + ?Sized>(
    g: &G,
    sigma: usize,
    params: &ClassifyParams,
) -> (PropertyReport, Vec<StarBoundCocone>) {
    let stream_budget = SearchBudget { horizon: params.stream_horizon, ..params.budget };
    let members: Vec<Vertex> = IndependentSetStream::new(g, stream_budget).collect();
    let (sampling, sets) = sample_sets(&params.property);
    let mut audits = Vec::new();
    let samples: Vec<SetSample> = sets
        .into_iter()
        .map(|set| {
            let witness = match cocone_via_star_bound(g, &set, members.iter().copied(), sigma, &stream_budget) {
                Ok(a) => {
                    let w = a.cocone;
                    audits.push(a);
                    w
                }
                Err(e) => {
                    log::info!("star-bound audit failed on {set:?}: {e}");
                    None
                }
            };
            SetSample { set, witness }
        })
        .collect();
    let report = PropertyReport { witnessed: samples.iter().all(|s| s.witness.is_some()), sampling, samples };
    (report, audits)
}

/// The complement cone property by direct co-cone search.
pub fn therefore_direct<G: Adjacency>(g: &G, params: &ClassifyParams) -> PropertyReport {
    check_therefore_property(g, &params.property, &params.budget)
}

fn sigma_at(g: &CountableGraph, n_max: usize, horizon: Vertex) -> BoundedInvariant {
    let b = SearchBudget::new(horizon).expect("positive horizon");
    star_number_bounded(g, n_max, &b)
}

fn revalidate(g: &CountableGraph, report: &EvidenceReport, params: &ClassifyParams) -> Result<(), ClassifyError> {
    let a = &report.artifacts;
    let p = a.m_extension.as_ref().ok_or_else(|| ClassifyError::Unsound("no extension attached".into()))?;
    if let Err((x, y)) = p.check_edge_preserving(g) {
        return Err(ClassifyError::Unsound(format!("extension breaks edge {x}-{y}")));
    }
    let m = a.m_map.as_ref().ok_or_else(|| ClassifyError::Unsound("no seed map attached".into()))?;
    if m.pairs().any(|(x, y)| p.image_of(x) != Some(y)) {
        return Err(ClassifyError::Unsound("extension does not contain m".into()));
    }
    if (0..params.depth).any(|v| !p.in_domain(v) || !p.in_range(v)) {
        return Err(ClassifyError::Unsound("extension does not reach the depth".into()));
    }
    let cone_ok = |s: &SetSample, g: &dyn Adjacency| {
        s.witness.is_some_and(|w| !s.set.contains(&w) && s.set.iter().all(|&x| g.adjacent(w, x)))
    };
    if !a.triangle_samples.iter().all(|s| cone_ok(s, g)) {
        return Err(ClassifyError::Unsound("a cone witness does not re-validate".into()));
    }
    let co = Complement(g);
    if !a.therefore_samples.iter().all(|s| cone_ok(s, &co)) {
        return Err(ClassifyError::Unsound("a co-cone witness does not re-validate".into()));
    }
    Ok(())
}

/// Gathers the evidence for `g` and assigns a branch.
pub fn classify(g: &CountableGraph, params: &ClassifyParams) -> Result<EvidenceReport, ClassifyError> {
    let (m_verdict, m_map, m_extension) = represents_m_with_witness(g, params);
    let (complement_m_verdict, ..) = represents_m_with_witness(&g.complement(), params);
    log::debug!("m: {m_verdict:?}, complement: {complement_m_verdict:?}");

    let registered = registered_values(g.spec());
    let mut sigma = sigma_at(g, params.sigma_max, params.sigma_horizon);
    sigma.exact = registered.sigma == Some(sigma.value);
    let alpha_budget = SearchBudget::new(params.alpha_horizon).expect("positive horizon");
    let mut alpha = independence_number_bounded(g, params.alpha_max, &alpha_budget);
    alpha.exact = registered.alpha == Some(alpha.value);

    let triangle = check_triangle_property(g, &params.property, &params.budget);
    let stable = || sigma_at(g, params.sigma_max, params.sigma_horizon.saturating_mul(2)).value == sigma.value;
    let (therefore, method, audits) = if sigma.value < params.sigma_split && stable() {
        let (r, audits) = therefore_via_star_bound(g, sigma.value as usize, params);
        (r, CoconeMethod::StarBound, audits)
    } else {
        (therefore_direct(g, params), CoconeMethod::Direct, Vec::new())
    };

    let branch = if m_verdict.is_refuted() {
        Branch::UhEvidence
    } else if m_verdict.is_witnessed() && triangle.witnessed && therefore.witnessed {
        Branch::MbEvidence
    } else {
        Branch::Inconclusive
    };

    let report = EvidenceReport {
        spec: g.spec().to_string(),
        triangle_verdict: PropertyVerdict::from_report(&triangle, None),
        therefore_verdict: PropertyVerdict::from_report(&therefore, Some(method)),
        m_verdict,
        complement_m_verdict,
        sigma,
        alpha,
        branch,
        artifacts: Artifacts {
            m_map,
            m_extension,
            triangle_samples: triangle.samples,
            therefore_samples: therefore.samples,
            star_bound_audits: audits,
        },
    };

    let (a, b) = (&report.m_verdict, &report.complement_m_verdict);
    if (a.is_witnessed() && b.is_refuted()) || (a.is_refuted() && b.is_witnessed()) {
        return Err(ClassifyError::CrossCheck { graph: a.clone(), complement: b.clone(), report: Box::new(report) });
    }
    if report.branch == Branch::MbEvidence {
        revalidate(g, &report, params)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GraphSpec {
        GraphSpec::parse(s).unwrap()
    }

    fn rule(s: &str) -> Option<&'static str> {
        match_rule(&spec(s)).map(|r| r.name)
    }

    #[test]
    fn rule_matching() {
        assert_eq!(rule("complete"), Some("no-nonedge"));
        assert_eq!(rule("complement(empty)"), Some("no-nonedge"));
        assert_eq!(rule("empty"), Some("no-edge"));
        assert_eq!(rule("cliques(1)"), Some("no-edge"));
        assert_eq!(rule("complement(complement(empty))"), Some("no-edge"));
        assert_eq!(rule("cliques(3)"), Some("block-permutation"));
        assert_eq!(rule("union(cliques(2),cliques(2))"), Some("block-permutation"));
        assert_eq!(rule("union(complete,complete)"), Some("block-permutation"));
        assert_eq!(rule("complement(cliques(4))"), Some("co-block-permutation"));
        assert_eq!(rule("union(cliques(2),cliques(3))"), None);
        assert_eq!(rule("union(empty,complete)"), None);
        assert_eq!(rule("rado"), None);
        assert_eq!(rule("gnp(p=0.5,seed=1)"), None);
    }

    #[test]
    fn m_verdict_examples() {
        let b = SearchBudget::default().with_scan_limit(1 << 18);
        let rado = CountableGraph::rado();
        assert_eq!(represents_m_bounded(&rado, 16, &b), MVerdict::Witnessed { depth: 16 });
        let v = represents_m_bounded(&CountableGraph::parse("cliques(3)").unwrap(), 16, &b);
        assert!(matches!(v, MVerdict::RefutedAnalytic { ref rule, .. } if rule == "block-permutation"));
        let v = represents_m_bounded(&CountableGraph::parse("complete").unwrap(), 16, &b);
        assert!(matches!(v, MVerdict::RefutedAnalytic { ref rule, .. } if rule == "no-nonedge"));
    }

    #[test]
    fn verdict_serialization() {
        let v = MVerdict::Witnessed { depth: 16 };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"witnessed","depth":16}"#);
        assert_eq!(serde_json::to_string(&Branch::MbEvidence).unwrap(), r#""MB-evidence""#);
    }
}
