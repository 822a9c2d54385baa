//! Bounded independence and star numbers, cone properties, independent-set growth.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{find_cocone, find_cone, SearchBudget};
use crate::graph::{is_independent, Adjacency, Complement, Vertex};

/// Lower bound on an invariant, certified by `witness`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedInvariant {
    pub value: u64,
    /// Set only when the value matches a registered analytic value for the graph.
    pub exact: bool,
    pub horizon: Vertex,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    Set { vertices: Vec<Vertex> },
    Star { center: Option<Vertex>, leaves: Vec<Vertex> },
}

impl BoundedInvariant {
    /// Re-checks the witness against `g`.
    pub fn validate<G: Adjacency + ?Sized>(&self, g: &G) -> bool {
        match &self.witness {
            Witness::Set { vertices } => vertices.len() as u64 == self.value && is_independent(g, vertices),
            Witness::Star { center, leaves } => {
                leaves.len() as u64 == self.value
                    && is_independent(g, leaves)
                    && match center {
                        Some(c) => leaves.iter().all(|&l| g.adjacent(*c, l)),
                        None => leaves.is_empty(),
                    }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("vertices {0} and {1} are adjacent, so the set is not independent")]
    NotIndependent(Vertex, Vertex),
}

/// Effective exhaustive-search window: `[0, min(horizon, scan_limit, order))`.
fn window<G: Adjacency + ?Sized>(g: &G, budget: &SearchBudget) -> Vertex {
    let h = budget.horizon.min(budget.scan_limit);
    g.order().map_or(h, |n| n.min(h))
}

/// Largest independent subset of `pool` of size at most `k_max` (branch and bound).
fn max_independent<G: Adjacency + ?Sized>(g: &G, pool: &[Vertex], k_max: usize) -> Vec<Vertex> {
    fn go<G: Adjacency + ?Sized>(
        g: &G,
        cands: &[Vertex],
        chosen: &mut Vec<Vertex>,
        best: &mut Vec<Vertex>,
        k_max: usize,
    ) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if best.len() >= k_max {
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if chosen.len() + (cands.len() - i) <= best.len() {
                return;
            }
            let rest: Vec<Vertex> = cands[i + 1..].iter().copied().filter(|&w| !g.adjacent(v, w)).collect();
            chosen.push(v);
            go(g, &rest, chosen, best, k_max);
            chosen.pop();
            if best.len() >= k_max {
                return;
            }
        }
    }
    let mut best = Vec::new();
    go(g, pool, &mut Vec::new(), &mut best, k_max);
    best
}

/// Independence number among vertices below the horizon, capped at `k_max`.
pub fn independence_number_bounded<G: Adjacency + ?Sized>(
    g: &G,
    k_max: usize,
    budget: &SearchBudget,
) -> BoundedInvariant {
    let h = window(g, budget);
    let pool: Vec<Vertex> = (0..h).collect();
    let best = max_independent(g, &pool, k_max);
    BoundedInvariant { value: best.len() as u64, exact: false, horizon: h, witness: Witness::Set { vertices: best } }
}

/// Clique number below the horizon, capped at `k_max` (independence in the complement).
pub fn clique_number_bounded<G: Adjacency>(g: &G, k_max: usize, budget: &SearchBudget) -> BoundedInvariant {
    independence_number_bounded(&Complement(g), k_max, budget)
}

/// Largest induced star `K_{1,n}`, `n <= n_max`, with all vertices below the horizon.
pub fn star_number_bounded<G: Adjacency + ?Sized>(g: &G, n_max: usize, budget: &SearchBudget) -> BoundedInvariant {
    let h = window(g, budget);
    let mut center = None;
    let mut leaves = Vec::new();
    for c in 0..h {
        if leaves.len() >= n_max {
            break;
        }
        let nbrs: Vec<Vertex> = (0..h).filter(|&v| g.adjacent(c, v)).collect();
        if nbrs.len() <= leaves.len() {
            continue;
        }
        let found = max_independent(g, &nbrs, n_max);
        if found.len() > leaves.len() {
            center = Some(c);
            leaves = found;
        }
    }
    BoundedInvariant { value: leaves.len() as u64, exact: false, horizon: h, witness: Witness::Star { center, leaves } }
}

/// Greedy least-index maximal independent set, enumerated lazily below a horizon.
pub struct IndependentSetStream<'a, G: ?Sized> {
    g: &'a G,
    budget: SearchBudget,
    chosen: Vec<Vertex>,
    next: Option<Vertex>,
}

impl<'a, G: Adjacency + ?Sized> IndependentSetStream<'a, G> {
    pub fn new(g: &'a G, budget: SearchBudget) -> Self {
        IndependentSetStream { g, budget, chosen: Vec::new(), next: Some(0) }
    }

    pub fn chosen(&self) -> &[Vertex] {
        &self.chosen
    }
}

impl<G: Adjacency + ?Sized> Iterator for IndependentSetStream<'_, G> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let from = self.next?;
        let limit = usize::try_from(self.budget.scan_limit).unwrap_or(usize::MAX);
        for v in self.g.candidates(&[], &self.chosen, from).take(limit) {
            if v >= self.budget.horizon {
                break;
            }
            if self.chosen.iter().all(|&u| !self.g.adjacent(u, v)) {
                self.chosen.push(v);
                self.next = v.checked_add(1);
                return Some(v);
            }
        }
        self.next = None;
        None
    }
}

/// How the finite sets for a cone-property check are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyParams {
    /// Sets are drawn from `{0..base-1}`.
    pub base: Vertex,
    /// Largest set size (smallest is 1).
    pub size_max: usize,
    /// Exhaustive enumeration is used when it needs at most this many sets;
    /// otherwise this many seeded random sets are drawn.
    pub trials: usize,
    pub seed: u64,
}

impl Default for PropertyParams {
    fn default() -> Self {
        PropertyParams { base: 8, size_max: 4, trials: 256, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSample {
    pub set: Vec<Vertex>,
    pub witness: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    /// True iff every sampled set received a witness.
    pub witnessed: bool,
    pub sampling: Sampling,
    pub samples: Vec<SetSample>,
}

impl PropertyReport {
    pub fn first_failure(&self) -> Option<&SetSample> {
        self.samples.iter().find(|s| s.witness.is_none())
    }
}

fn subsets_count(n: u64, k_max: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=k_max as u128 {
        if k > n as u128 {
            break;
        }
        c = c * (n as u128 - k + 1) / k;
        total = total.checked_add(c)?;
    }
    Some(total)
}

/// Finite sets used by the cone-property checks.
pub fn sample_sets(params: &PropertyParams) -> (Sampling, Vec<Vec<Vertex>>) {
    let n = params.base;
    let exhaustive = subsets_count(n, params.size_max).is_some_and(|c| c <= params.trials as u128);
    if exhaustive {
        let mut out = Vec::new();
        for k in 1..=params.size_max.min(n as usize) {
            for combo in itertools::Itertools::combinations(0..n, k) {
                out.push(combo);
            }
        }
        return (Sampling::Exhaustive, out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let out = (0..params.trials)
        .map(|_| {
            let k = rand::Rng::gen_range(&mut rng, 1..=params.size_max.min(n as usize).max(1));
            let mut set: Vec<Vertex> = sample(&mut rng, n as usize, k).into_iter().map(|v| v as Vertex).collect();
            set.sort_unstable();
            set
        })
        .collect();
    (Sampling::Random, out)
}

/// Cone search over every sampled set: the bounded form of "every finite set has a cone".
pub fn check_triangle_property<G: Adjacency + ?Sized>(
    g: &G,
    params: &PropertyParams,
    budget: &SearchBudget,
) -> PropertyReport {
    let (sampling, sets) = sample_sets(params);
    let samples: Vec<SetSample> = sets
        .into_iter()
        .map(|set| {
            let witness = find_cone(g, &set, budget);
            SetSample { set, witness }
        })
        .collect();
    PropertyReport { witnessed: samples.iter().all(|s| s.witness.is_some()), sampling, samples }
}

/// The cone property of the complement: every sampled set has a co-cone.
pub fn check_therefore_property<G: Adjacency>(g: &G, params: &PropertyParams, budget: &SearchBudget) -> PropertyReport {
    check_triangle_property(&Complement(g), params, budget)
}

/// A co-cone over the independent set `a`, i.e. a vertex extending it.
pub fn grow_independent_set<G: Adjacency>(
    g: &G,
    a: &[Vertex],
    budget: &SearchBudget,
) -> Result<Option<Vertex>, InvariantError> {
    for (i, &u) in a.iter().enumerate() {
        if let Some(&v) = a[i + 1..].iter().find(|&&v| g.adjacent(u, v)) {
            return Err(InvariantError::NotIndependent(u, v));
        }
    }
    Ok(find_cocone(g, a, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CountableGraph;

    fn g(s: &str) -> CountableGraph {
        CountableGraph::parse(s).unwrap()
    }

    fn within(h: Vertex) -> SearchBudget {
        SearchBudget::new(h).unwrap()
    }

    #[test]
    fn independence_examples() {
        let a = independence_number_bounded(&g("complete"), 10, &within(20));
        assert_eq!(a.value, 1);
        let c3 = g("cliques(3)");
        let a = independence_number_bounded(&c3, 20, &within(30));
        assert_eq!(a.value, 10);
        assert!(a.validate(&c3));
        let rado = CountableGraph::rado();
        let a = independence_number_bounded(&rado, 5, &within(32));
        assert_eq!(a.value, 5);
        assert!(a.validate(&rado));
    }

    #[test]
    fn star_examples() {
        let c3 = g("cliques(3)");
        let s = star_number_bounded(&c3, 6, &within(30));
        assert_eq!(s.value, 1);
        assert!(s.validate(&c3));
        let s = star_number_bounded(&g("empty"), 6, &within(30));
        assert_eq!((s.value, s.witness.clone()), (0, Witness::Star { center: None, leaves: vec![] }));
        let rado = CountableGraph::rado();
        let s = star_number_bounded(&rado, 4, &within(64));
        assert_eq!(s.value, 4);
        assert!(s.validate(&rado));
        // Neighbours of 0 are the odd numbers; 1, 5, 9, 13 are pairwise non-adjacent.
        assert_eq!(s.witness, Witness::Star { center: Some(0), leaves: vec![1, 5, 9, 13] });
    }

    #[test]
    fn greedy_stream() {
        let c3 = g("cliques(3)");
        let got: Vec<_> = IndependentSetStream::new(&c3, within(20)).collect();
        assert_eq!(got, vec![0, 3, 6, 9, 12, 15, 18]);
        let k: Vec<_> = IndependentSetStream::new(&g("complete"), SearchBudget::default()).collect();
        assert_eq!(k, vec![0]);
        let rado = CountableGraph::rado();
        let r: Vec<_> = IndependentSetStream::new(&rado, within(64)).collect();
        assert!(is_independent(&rado, &r));
        assert_eq!(&r[..4], &[0, 2, 8, 10]);
    }

    #[test]
    fn property_checks() {
        let p = PropertyParams::default();
        let b = SearchBudget::default();
        assert!(check_triangle_property(&g("complete"), &p, &b).witnessed);
        let e = check_triangle_property(&g("empty"), &p, &b);
        assert!(!e.witnessed && e.samples.iter().all(|s| s.witness.is_none()));
        let r = check_triangle_property(&CountableGraph::rado(), &p, &b);
        assert_eq!(r.sampling, Sampling::Exhaustive);
        assert_eq!(r.samples.len(), 8 + 28 + 56 + 70);
        assert!(r.witnessed);
        // Cone over {0,1} in BIT: least v with bits 0 and 1 set.
        assert_eq!(r.samples[8].set, vec![0, 1]);
        assert_eq!(r.samples[8].witness, Some(3));
        assert!(check_therefore_property(&g("empty"), &p, &b).witnessed);
        assert!(!check_therefore_property(&g("complete"), &p, &b).witnessed);
        assert!(check_therefore_property(&g("cliques(3)"), &p, &b).witnessed);
    }

    #[test]
    fn random_sampling_is_seeded() {
        let p = PropertyParams { base: 40, size_max: 5, trials: 50, seed: 9 };
        let (mode, a) = sample_sets(&p);
        assert_eq!(mode, Sampling::Random);
        assert_eq!(a, sample_sets(&p).1);
        assert_ne!(a, sample_sets(&PropertyParams { seed: 10, ..p }).1);
        assert!(a.iter().all(|s| !s.is_empty() && s.len() <= 5 && s.iter().all(|&v| v < 40)));
    }

    #[test]
    fn grow_examples() {
        let b = SearchBudget::default();
        assert_eq!(grow_independent_set(&g("empty"), &[0, 1], &b), Ok(Some(2)));
        assert_eq!(grow_independent_set(&g("cliques(3)"), &[0], &b), Ok(Some(3)));
        assert_eq!(grow_independent_set(&g("complete"), &[0], &b), Ok(None));
        assert_eq!(grow_independent_set(&g("complete"), &[0, 1], &b), Err(InvariantError::NotIndependent(0, 1)));
    }
}
