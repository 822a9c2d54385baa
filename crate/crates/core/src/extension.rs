//! Back-and-forth search for partial bimorphisms, cone searches and clique forcing.
//!
//! Every search returns the least admissible vertex below the budget's horizon.
//! Oracles supply ascending candidate streams (see [`Adjacency::candidates`]),
//! so "least" is exact while large stretches of ℕ are skipped.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge_count, is_clique, is_independent, Adjacency, Complement, Vertex};
use crate::morphism::{classify_map, LocalMorphism, MorphismError, MorphismKind};

/// Limits for a single search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Only vertices strictly below this index are considered.
    pub horizon: Vertex,
    /// Retries with a doubled horizon after an exhausted stage.
    pub backtracks: u32,
    /// Maximum number of candidates examined by one search.
    pub scan_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { horizon: Vertex::MAX, backtracks: 3, scan_limit: 1 << 18 }
    }
}

impl SearchBudget {
    pub fn new(horizon: Vertex) -> Result<Self, ExtensionError> {
        if horizon == 0 {
            return Err(ExtensionError::InvalidBudget);
        }
        Ok(SearchBudget { horizon, ..Default::default() })
    }

    pub fn with_backtracks(self, backtracks: u32) -> Self {
        SearchBudget { backtracks, ..self }
    }

    pub fn with_scan_limit(self, scan_limit: u64) -> Self {
        SearchBudget { scan_limit, ..self }
    }

    fn doubled(self, times: u32) -> Self {
        let factor = 1u64.checked_shl(times).unwrap_or(u64::MAX);
        SearchBudget { horizon: self.horizon.saturating_mul(factor), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Seed,
    Domain,
    Range,
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StepKind::Seed => "seed",
            StepKind::Domain => "domain",
            StepKind::Range => "range",
        })
    }
}

/// How a range step found its preimage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeRule {
    Cocone,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: StepKind,
    /// Domain vertex of the new pair.
    pub vertex: Vertex,
    /// Image of `vertex`.
    pub image: Vertex,
    /// Candidates examined before the pair was fixed.
    pub scanned: u64,
    #[serde(skip)]
    pub rule: Option<RangeRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("exhausted: no admissible vertex for the {step} step at {vertex} below horizon {horizon} ({scanned} candidates scanned)")]
    Exhausted { step: StepKind, vertex: Vertex, horizon: Vertex, scanned: u64, trace: Vec<TraceStep> },
    #[error("seed map is a {0:?}, not a monomorphism")]
    NotMonomorphism(MorphismKind),
    #[error("vertex {0} is already in the domain")]
    InDomain(Vertex),
    #[error("vertex {0} is already in the range")]
    InRange(Vertex),
    #[error("horizon must be at least 1")]
    InvalidBudget,
    #[error("stage {stage}: {source}")]
    Stage { stage: usize, source: Box<ExtensionError> },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// Finite injective edge-preserving map with the steps that built it.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PartialBimorphism {
    pairs: Vec<(Vertex, Vertex)>,
    trace: Vec<TraceStep>,
    #[serde(skip)]
    forward: HashMap<Vertex, Vertex>,
    #[serde(skip)]
    backward: HashMap<Vertex, Vertex>,
}

impl PartialEq for PartialBimorphism {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs && self.trace == other.trace
    }
}

impl PartialBimorphism {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds with the pairs of `f` (recorded as seed steps). Edge preservation is not checked.
    pub fn from_local(f: &LocalMorphism) -> Result<Self, ExtensionError> {
        let mut p = Self::new();
        for (x, y) in f.pairs() {
            p.push(StepKind::Seed, x, y, 0, None)?;
        }
        Ok(p)
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Result<Self, ExtensionError> {
        Self::from_local(&LocalMorphism::from_pairs(pairs)?)
    }

    fn push(
        &mut self,
        step: StepKind,
        x: Vertex,
        y: Vertex,
        scanned: u64,
        rule: Option<RangeRule>,
    ) -> Result<(), ExtensionError> {
        if self.forward.contains_key(&x) {
            return Err(ExtensionError::InDomain(x));
        }
        if self.backward.contains_key(&y) {
            return Err(ExtensionError::InRange(y));
        }
        self.forward.insert(x, y);
        self.backward.insert(y, x);
        self.pairs.push((x, y));
        self.trace.push(TraceStep { step, vertex: x, image: y, scanned, rule });
        Ok(())
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn image_of(&self, x: Vertex) -> Option<Vertex> {
        self.forward.get(&x).copied()
    }

    pub fn preimage_of(&self, y: Vertex) -> Option<Vertex> {
        self.backward.get(&y).copied()
    }

    pub fn in_domain(&self, x: Vertex) -> bool {
        self.forward.contains_key(&x)
    }

    pub fn in_range(&self, y: Vertex) -> bool {
        self.backward.contains_key(&y)
    }

    pub fn domain(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn range(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Least natural number outside the domain.
    pub fn least_missing_domain(&self) -> Vertex {
        (0..).find(|x| !self.forward.contains_key(x)).expect("finite domain")
    }

    /// Least natural number outside the range.
    pub fn least_missing_range(&self) -> Vertex {
        (0..).find(|y| !self.backward.contains_key(y)).expect("finite range")
    }

    pub fn to_local_morphism(&self) -> LocalMorphism {
        LocalMorphism::from_pairs(&self.pairs).expect("pairs have distinct sources")
    }

    /// First domain pair whose edge is not preserved, if any.
    pub fn check_edge_preserving<G: Adjacency + ?Sized>(&self, g: &G) -> Result<(), (Vertex, Vertex)> {
        for (i, &(u, fu)) in self.pairs.iter().enumerate() {
            for &(v, fv) in &self.pairs[i + 1..] {
                if g.adjacent(u, v) && !g.adjacent(fu, fv) {
                    return Err((u, v));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one least-vertex search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scan {
    pub found: Option<Vertex>,
    pub scanned: u64,
}

fn least_candidate<G: Adjacency + ?Sized>(
    g: &G,
    adj: &[Vertex],
    non: &[Vertex],
    from: Vertex,
    budget: &SearchBudget,
    accept: impl Fn(Vertex) -> bool,
) -> Scan {
    let mut scanned = 0;
    for w in g.candidates(adj, non, from) {
        if w >= budget.horizon || scanned >= budget.scan_limit {
            break;
        }
        scanned += 1;
        if accept(w) {
            return Scan { found: Some(w), scanned };
        }
    }
    Scan { found: None, scanned }
}

/// Least vertex outside `xs` adjacent to every vertex of `xs`.
pub fn find_cone_scan<G: Adjacency + ?Sized>(g: &G, xs: &[Vertex], budget: &SearchBudget) -> Scan {
    least_candidate(g, xs, &[], 0, budget, |w| !xs.contains(&w) && xs.iter().all(|&x| g.adjacent(w, x)))
}

pub fn find_cone<G: Adjacency + ?Sized>(g: &G, xs: &[Vertex], budget: &SearchBudget) -> Option<Vertex> {
    find_cone_scan(g, xs, budget).found
}

/// Least vertex outside `xs` adjacent to no vertex of `xs`: a cone in the complement.
pub fn find_cocone<G: Adjacency>(g: &G, xs: &[Vertex], budget: &SearchBudget) -> Option<Vertex> {
    find_cone(&Complement(g), xs, budget)
}

fn exhausted(
    step: StepKind,
    vertex: Vertex,
    budget: &SearchBudget,
    scanned: u64,
    p: &PartialBimorphism,
) -> ExtensionError {
    ExtensionError::Exhausted { step, vertex, horizon: budget.horizon, scanned, trace: p.trace.clone() }
}

fn domain_step_in_place<G: Adjacency + ?Sized>(
    g: &G,
    p: &mut PartialBimorphism,
    v: Vertex,
    budget: &SearchBudget,
) -> Result<(), ExtensionError> {
    if p.in_domain(v) {
        return Err(ExtensionError::InDomain(v));
    }
    let targets: Vec<Vertex> = p.pairs.iter().filter(|&&(x, _)| g.adjacent(x, v)).map(|&(_, y)| y).collect();
    let scan =
        least_candidate(g, &targets, &[], 0, budget, |w| !p.in_range(w) && targets.iter().all(|&t| g.adjacent(w, t)));
    match scan.found {
        Some(w) => p.push(StepKind::Domain, v, w, scan.scanned, None),
        None => Err(exhausted(StepKind::Domain, v, budget, scan.scanned, p)),
    }
}

fn range_step_in_place<G: Adjacency + ?Sized>(
    g: &G,
    p: &mut PartialBimorphism,
    w: Vertex,
    budget: &SearchBudget,
) -> Result<(), ExtensionError> {
    if p.in_range(w) {
        return Err(ExtensionError::InRange(w));
    }
    let dom = p.domain();
    let cocone =
        least_candidate(g, &[], &dom, 0, budget, |u| !p.in_domain(u) && dom.iter().all(|&x| !g.adjacent(u, x)));
    if let Some(u) = cocone.found {
        return p.push(StepKind::Range, u, w, cocone.scanned, Some(RangeRule::Cocone));
    }
    // Preimage neighbours must map into N(w): avoid every x with p(x) ≁ w.
    let blocked: Vec<Vertex> = p.pairs.iter().filter(|&&(_, y)| !g.adjacent(w, y)).map(|&(x, _)| x).collect();
    let direct =
        least_candidate(g, &[], &blocked, 0, budget, |u| !p.in_domain(u) && blocked.iter().all(|&x| !g.adjacent(u, x)));
    let scanned = cocone.scanned + direct.scanned;
    match direct.found {
        Some(u) => p.push(StepKind::Range, u, w, scanned, Some(RangeRule::Direct)),
        None => Err(exhausted(StepKind::Range, w, budget, scanned, p)),
    }
}

/// Adds `v` to the domain, mapped to the least fresh cone over the images of its domain neighbours.
pub fn extend_domain_step<G: Adjacency + ?Sized>(
    g: &G,
    p: &PartialBimorphism,
    v: Vertex,
    budget: &SearchBudget,
) -> Result<PartialBimorphism, ExtensionError> {
    let mut q = p.clone();
    domain_step_in_place(g, &mut q, v, budget)?;
    Ok(q)
}

/// Adds `w` to the range. The preimage is the least co-cone over the domain when one
/// exists below the horizon, otherwise the least `u` whose domain neighbours all map into `N(w)`.
pub fn extend_range_step<G: Adjacency + ?Sized>(
    g: &G,
    p: &PartialBimorphism,
    w: Vertex,
    budget: &SearchBudget,
) -> Result<PartialBimorphism, ExtensionError> {
    let mut q = p.clone();
    range_step_in_place(g, &mut q, w, budget)?;
    Ok(q)
}

/// Extends the monomorphism `f` until domain and range both contain `{0..n-1}`,
/// alternating domain and range steps.
pub fn extend_to_partial_bimorphism<G: Adjacency + ?Sized>(
    g: &G,
    f: &LocalMorphism,
    n: Vertex,
    budget: &SearchBudget,
) -> Result<PartialBimorphism, ExtensionError> {
    let kind = classify_map(f, g, g)?;
    if kind < MorphismKind::Monomorphism {
        return Err(ExtensionError::NotMonomorphism(kind));
    }
    let mut p = PartialBimorphism::from_local(f)?;
    let mut next_dom = 0;
    let mut next_rng = 0;
    loop {
        while p.in_domain(next_dom) {
            next_dom += 1;
        }
        if next_dom < n {
            domain_step_in_place(g, &mut p, next_dom, budget)?;
        }
        while p.in_range(next_rng) {
            next_rng += 1;
        }
        if next_rng < n {
            range_step_in_place(g, &mut p, next_rng, budget)?;
        }
        if next_dom >= n && next_rng >= n {
            break;
        }
    }
    log::debug!("extended to {} pairs", p.len());
    Ok(p)
}

/// Stages of a clique-forcing run and the resulting clique.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueForcing {
    pub stages: Vec<PartialBimorphism>,
    /// `image[i]` is where `X[i]` ends up after all stages.
    pub image: Vec<Vertex>,
}

fn least_nonedge_in<G: Adjacency + ?Sized>(g: &G, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let sorted: BTreeSet<Vertex> = set.iter().copied().collect();
    let sorted: Vec<Vertex> = sorted.into_iter().collect();
    sorted.iter().enumerate().find_map(|(i, &a)| sorted[i + 1..].iter().find(|&&b| !g.adjacent(a, b)).map(|&b| (a, b)))
}

fn force_stage<G: Adjacency + ?Sized>(
    g: &G,
    current: &[Vertex],
    budget: &SearchBudget,
) -> Result<PartialBimorphism, ExtensionError> {
    let (a, b) = least_nonedge_in(g, current).expect("caller checked the set is not a clique");
    let mut last = None;
    for attempt in 0..=budget.backtracks {
        let b_i = budget.doubled(attempt);
        let (u, v) = match least_edge_pair(g, &b_i) {
            Some(e) => e,
            None => {
                last = Some(exhausted(StepKind::Seed, a, &b_i, 0, &PartialBimorphism::new()));
                continue;
            }
        };
        let mut p = PartialBimorphism::from_pairs(&[(a, u), (b, v)])?;
        let mut rest: Vec<Vertex> = current.iter().copied().filter(|&y| y != a && y != b).collect();
        rest.sort_unstable();
        match rest.iter().try_for_each(|&y| domain_step_in_place(g, &mut p, y, &b_i)) {
            Ok(()) => return Ok(p),
            Err(e) => last = Some(e),
        }
        if b_i.horizon == Vertex::MAX {
            break;
        }
    }
    Err(last.expect("at least one attempt ran"))
}

/// Least edge as an ordered pair, within the budget.
pub fn least_edge_pair<G: Adjacency + ?Sized>(g: &G, budget: &SearchBudget) -> Option<(Vertex, Vertex)> {
    let mut scanned = 0;
    for u in g.candidates(&[], &[], 0) {
        if u >= budget.horizon || scanned >= budget.scan_limit {
            break;
        }
        scanned += 1;
        let inner = SearchBudget { scan_limit: budget.scan_limit - scanned, ..*budget };
        let scan = least_candidate(g, &[u], &[], u + 1, &inner, |v| v != u && g.adjacent(u, v));
        scanned += scan.scanned;
        if let Some(v) = scan.found {
            return Some((u, v));
        }
    }
    None
}

/// Repeatedly maps the least nonedge of the current set onto the least edge and
/// re-places the other vertices by cone searches, until the set is a clique.
pub fn clique_force<G: Adjacency + ?Sized>(
    g: &G,
    xs: &[Vertex],
    budget: &SearchBudget,
) -> Result<CliqueForcing, ExtensionError> {
    LocalMorphism::new(xs.to_vec(), xs.to_vec())?;
    let mut current = xs.to_vec();
    let mut stages = Vec::new();
    let max_stages = xs.len() * xs.len().saturating_sub(1) / 2;
    while !is_clique(g, &current) {
        let stage = stages.len();
        assert!(stage < max_stages, "each stage adds an edge");
        let p = force_stage(g, &current, budget).map_err(|e| ExtensionError::Stage { stage, source: Box::new(e) })?;
        let next: Vec<Vertex> = current.iter().map(|&x| p.image_of(x).expect("stage is total on the set")).collect();
        debug_assert!(edge_count(g, &next) > edge_count(g, &current));
        current = next;
        stages.push(p);
    }
    Ok(CliqueForcing { stages, image: current })
}

/// An edge-preserving map from an independent set onto `X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentPreimage {
    /// Pairs `(y, x)`: independent vertex `y` maps onto `x ∈ X`.
    pub map: PartialBimorphism,
    pub independent: Vec<Vertex>,
    /// Clique-forcing stages in the complement.
    pub stages: Vec<PartialBimorphism>,
}

/// Forces `X` to a clique in the complement and inverts the composite.
pub fn independent_preimage<G: Adjacency>(
    g: &G,
    xs: &[Vertex],
    budget: &SearchBudget,
) -> Result<IndependentPreimage, ExtensionError> {
    let forcing = clique_force(&Complement(g), xs, budget)?;
    let pairs: Vec<(Vertex, Vertex)> = forcing.image.iter().copied().zip(xs.iter().copied()).collect();
    let map = PartialBimorphism::from_pairs(&pairs)?;
    debug_assert!(is_independent(g, &forcing.image));
    Ok(IndependentPreimage { map, independent: forcing.image, stages: forcing.stages })
}

/// Co-cone read off an independent set, with the blocking audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarBoundCocone {
    pub cocone: Option<Vertex>,
    /// Elements of `I` excluded as candidates, ascending.
    pub blocked: Vec<Vertex>,
    /// `|⋃{N(x) ∩ I : x ∈ X∖I}|`.
    pub neighbor_blocked: usize,
    /// `|X ∩ I|`.
    pub own_blocked: usize,
    /// `σ·|X| + |X ∩ I|`.
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarBoundError {
    #[error("vertex {vertex} has {count} neighbours in the independent set, more than sigma = {sigma}")]
    Audit { vertex: Vertex, count: usize, sigma: usize },
    #[error("blocked count {blocked} exceeds the bound {bound}")]
    Bound { blocked: usize, bound: usize },
    #[error("independent-set stream is not strictly increasing at {0}")]
    NotIncreasing(Vertex),
}

/// Least element of the independent set `stream` (below the horizon) that is neither in `X`
/// nor adjacent to `X`. Every `x ∈ X∖I` is audited to have at most `sigma` neighbours in `I`.
pub fn cocone_via_star_bound<G, I>(
    g: &G,
    xs: &[Vertex],
    stream: I,
    sigma: usize,
    budget: &SearchBudget,
) -> Result<StarBoundCocone, StarBoundError>
where
    G: Adjacency + ?Sized,
    I: IntoIterator<Item = Vertex>,
{
    let mut members = Vec::new();
    for v in stream {
        if v >= budget.horizon || members.len() as u64 >= budget.scan_limit {
            break;
        }
        if members.last().is_some_and(|&last| v <= last) {
            return Err(StarBoundError::NotIncreasing(v));
        }
        members.push(v);
    }
    let in_set: HashSet<Vertex> = members.iter().copied().collect();
    let mut blocked: BTreeSet<Vertex> = xs.iter().copied().filter(|x| in_set.contains(x)).collect();
    let own_blocked = blocked.len();
    let mut neighbours = BTreeSet::new();
    for &x in xs.iter().filter(|x| !in_set.contains(x)) {
        let hits: Vec<Vertex> = members.iter().copied().filter(|&i| g.adjacent(x, i)).collect();
        if hits.len() > sigma {
            return Err(StarBoundError::Audit { vertex: x, count: hits.len(), sigma });
        }
        neighbours.extend(hits);
    }
    let neighbor_blocked = neighbours.len();
    blocked.extend(neighbours);
    let bound = sigma * xs.len() + own_blocked;
    if blocked.len() > bound {
        return Err(StarBoundError::Bound { blocked: blocked.len(), bound });
    }
    let cocone = members.iter().copied().find(|i| !blocked.contains(i));
    Ok(StarBoundCocone { cocone, blocked: blocked.into_iter().collect(), neighbor_blocked, own_blocked, bound })
}
