//! Exhaustive ground truth on small finite graphs.
//!
//! Everything here enumerates: morphism sets, endomorphism monoids, represented sets
//! and the "every local X-morphism extends to a Y-endomorphism" checks. Sizes are
//! capped through [`LabCaps`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{all_graphs, FiniteGraph, GraphError, Vertex};
use crate::morphism::{LocalMorphism, MorphismKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("order {order} exceeds the cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("size {size} exceeds the graph order {order}")]
    SizeTooLarge { size: usize, order: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bimorphism {0:?} is not an automorphism")]
    BimorphismNotAutomorphism(LocalMorphism),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Order limits for each kind of enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabCaps {
    pub morphisms: usize,
    pub represented: usize,
    pub homogeneity: usize,
    /// Largest `|End_Y| * 2^n` for which restrictions are tabulated instead of searched.
    pub restriction_table: usize,
}

impl Default for LabCaps {
    fn default() -> Self {
        LabCaps { morphisms: 8, represented: 7, homogeneity: 7, restriction_table: 1 << 22 }
    }
}

fn check_cap(order: usize, cap: usize) -> Result<(), LabError> {
    if order > cap {
        return Err(LabError::SizeCap { order, cap });
    }
    Ok(())
}

/// Kinds of total endomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EndoKind {
    /// Homomorphism.
    H,
    /// Monomorphism (injective homomorphism).
    M,
    /// Self-embedding.
    I,
    /// Epimorphism (surjective homomorphism).
    E,
    /// Bimorphism (surjective monomorphism).
    B,
    /// Automorphism.
    A,
}

impl EndoKind {
    pub const ALL: [EndoKind; 6] = [EndoKind::H, EndoKind::M, EndoKind::I, EndoKind::E, EndoKind::B, EndoKind::A];

    fn shape(self) -> Shape {
        use EndoKind::*;
        Shape {
            injective: matches!(self, M | I | B | A),
            reflect: matches!(self, I | A),
            surjective: matches!(self, E | B | A),
        }
    }
}

/// Kinds of local morphism a homogeneity notion quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LocalKind {
    /// Local isomorphism.
    I,
    /// Local monomorphism.
    M,
    /// Local homomorphism.
    H,
}

impl LocalKind {
    pub const ALL: [LocalKind; 3] = [LocalKind::I, LocalKind::M, LocalKind::H];

    fn shape(self) -> Shape {
        Shape { injective: self != LocalKind::H, reflect: self == LocalKind::I, surjective: false }
    }
}

impl std::fmt::Display for EndoKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::fmt::Display for LocalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    injective: bool,
    reflect: bool,
    surjective: bool,
}

impl Shape {
    fn of_kind(kind: MorphismKind) -> Shape {
        Shape {
            injective: kind >= MorphismKind::Monomorphism,
            reflect: kind == MorphismKind::Embedding,
            surjective: false,
        }
    }
}

/// Backtracking over maps `dom → tgt` that preserve edges (and optionally are
/// injective or reflect edges). `prefix` fixes the images of the first vertices of `dom`.
struct MapSearch<'a> {
    src: &'a FiniteGraph,
    tgt: &'a FiniteGraph,
    dom: &'a [usize],
    shape: Shape,
}

impl MapSearch<'_> {
    fn admissible(&self, img: &[usize], y: usize) -> bool {
        let i = img.len();
        img.iter().enumerate().all(|(j, &fj)| {
            if self.shape.injective && fj == y {
                return false;
            }
            let edge = self.src.has_edge(self.dom[j], self.dom[i]);
            let image_edge = fj != y && self.tgt.has_edge(fj, y);
            !(edge && !image_edge) && !(self.shape.reflect && !edge && image_edge)
        })
    }

    fn prefix_ok(&self, prefix: &[usize]) -> bool {
        (0..prefix.len()).all(|i| self.admissible(&prefix[..i], prefix[i]))
    }

    fn run<B>(&self, img: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>) -> ControlFlow<B> {
        if img.len() == self.dom.len() {
            if self.shape.surjective && img.iter().collect::<HashSet<_>>().len() < self.tgt.order() {
                return ControlFlow::Continue(());
            }
            return visit(img);
        }
        for y in 0..self.tgt.order() {
            if self.admissible(img, y) {
                img.push(y);
                self.run(img, visit)?;
                img.pop();
            }
        }
        ControlFlow::Continue(())
    }
}

fn to_local(dom: &[usize], img: &[usize]) -> LocalMorphism {
    LocalMorphism::new(dom.iter().map(|&x| x as Vertex).collect(), img.iter().map(|&y| y as Vertex).collect())
        .expect("search produces aligned maps")
}

/// All total maps `A → B` of at least the given strength.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismSet {
    pub source: FiniteGraph,
    pub target: FiniteGraph,
    pub kind: MorphismKind,
    pub maps: Vec<LocalMorphism>,
}

impl MorphismSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// Lab entry points with configurable caps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lab {
    pub caps: LabCaps,
}

impl Lab {
    pub fn new(caps: LabCaps) -> Self {
        Lab { caps }
    }

    /// Every map `a → b` whose strength is at least `kind` (homomorphisms include
    /// monomorphisms, which include embeddings).
    pub fn enumerate_morphisms(
        &self,
        a: &FiniteGraph,
        b: &FiniteGraph,
        kind: MorphismKind,
    ) -> Result<MorphismSet, LabError> {
        check_cap(a.order(), self.caps.morphisms)?;
        check_cap(b.order(), self.caps.morphisms)?;
        let dom: Vec<usize> = (0..a.order()).collect();
        let mut maps = Vec::new();
        if kind == MorphismKind::NotHomomorphism {
            for img in (0..a.order()).map(|_| 0..b.order()).multi_cartesian_product() {
                maps.push(to_local(&dom, &img));
            }
            if a.order() == 0 {
                maps.push(LocalMorphism::empty());
            }
        } else {
            let search = MapSearch { src: a, tgt: b, dom: &dom, shape: Shape::of_kind(kind) };
            let _ = search.run::<()>(&mut Vec::new(), &mut |img| {
                maps.push(to_local(&dom, img));
                ControlFlow::Continue(())
            });
        }
        Ok(MorphismSet { source: a.clone(), target: b.clone(), kind, maps })
    }

    /// Total endomorphisms of `g` of the given kind, in lexicographic order of images.
    pub fn endomorphisms(&self, g: &FiniteGraph, kind: EndoKind) -> Result<Vec<Vec<usize>>, LabError> {
        check_cap(g.order(), self.caps.morphisms)?;
        Ok(endos(g, kind, usize::MAX).expect("no limit"))
    }

    /// Bijective edge-preserving self-maps. Each is checked to be an automorphism.
    pub fn bimorphism_monoid(&self, g: &FiniteGraph) -> Result<Vec<LocalMorphism>, LabError> {
        let dom: Vec<usize> = (0..g.order()).collect();
        let maps: Vec<LocalMorphism> =
            self.endomorphisms(g, EndoKind::B)?.iter().map(|img| to_local(&dom, img)).collect();
        for f in &maps {
            if crate::morphism::classify_map(f, g, g).ok() != Some(MorphismKind::Embedding) {
                return Err(LabError::BimorphismNotAutomorphism(f.clone()));
            }
        }
        Ok(maps)
    }

    /// Canonical graphs of order `size` that embed into `g`, ascending by code.
    pub fn age(&self, g: &FiniteGraph, size: usize) -> Result<Vec<FiniteGraph>, LabError> {
        if size > g.order() {
            return Err(LabError::SizeTooLarge { size, order: g.order() });
        }
        let mut seen = BTreeMap::new();
        for combo in (0..g.order()).combinations(size) {
            let c = g.induced(&combo).canonical()?.graph;
            seen.entry(c.code()).or_insert(c);
        }
        Ok(seen.into_values().collect())
    }

    /// For every ordered pair of age graphs `A, B` of order `size` and every pair of
    /// embeddings `e: A → g`, `e′: B → g`, the maps `f: A → B` with `F ∘ e = e′ ∘ f`
    /// for some bimorphism `F` of `g`.
    pub fn represented_sets(&self, g: &FiniteGraph, size: usize) -> Result<RepresentedSets, LabError> {
        check_cap(g.order(), self.caps.represented)?;
        let ages = self.age(g, size)?;
        let embeddings: Vec<Vec<LocalMorphism>> = ages
            .iter()
            .map(|a| self.enumerate_morphisms(a, g, MorphismKind::Embedding).map(|s| s.maps))
            .collect::<Result<_, _>>()?;
        let mask = |vs: &mut dyn Iterator<Item = Vertex>| vs.fold(0u64, |m, v| m | (1 << v));
        let mut by_image: HashMap<(usize, u64), Vec<usize>> = HashMap::new();
        let mut sets: BTreeMap<RepresentedKey, BTreeSet<Vec<Vertex>>> = BTreeMap::new();
        for (b, embs) in embeddings.iter().enumerate() {
            for (j, e) in embs.iter().enumerate() {
                by_image.entry((b, mask(&mut e.img.iter().copied()))).or_default().push(j);
            }
        }
        for (a, ea) in embeddings.iter().enumerate() {
            for (b, eb) in embeddings.iter().enumerate() {
                for i in 0..ea.len() {
                    for j in 0..eb.len() {
                        sets.insert(RepresentedKey { source: a, target: b, e: i, e_prime: j }, BTreeSet::new());
                    }
                }
            }
        }
        let inverses: Vec<Vec<HashMap<Vertex, Vertex>>> = embeddings
            .iter()
            .map(|embs| embs.iter().map(|e| e.pairs().map(|(x, y)| (y, x)).collect()).collect())
            .collect();
        for big_f in self.bimorphism_monoid(g)? {
            for (a, ea) in embeddings.iter().enumerate() {
                for (i, e) in ea.iter().enumerate() {
                    let moved: Vec<Vertex> = e.img.iter().map(|&v| big_f.img[v as usize]).collect();
                    let m = mask(&mut moved.iter().copied());
                    for (b, inv_b) in inverses.iter().enumerate() {
                        for &j in by_image.get(&(b, m)).into_iter().flatten() {
                            let f: Vec<Vertex> = moved.iter().map(|v| inv_b[j][v]).collect();
                            sets.get_mut(&RepresentedKey { source: a, target: b, e: i, e_prime: j })
                                .expect("all keys inserted")
                                .insert(f);
                        }
                    }
                }
            }
        }
        Ok(RepresentedSets { size, ages, embeddings, sets })
    }

    /// Whether every local `x`-morphism of `g` extends to a total `y`-endomorphism.
    /// Local maps are tried by increasing domain size, so a counterexample is minimal.
    pub fn check_xy_homogeneity(&self, g: &FiniteGraph, x: LocalKind, y: EndoKind) -> Result<XyVerdict, LabError> {
        check_cap(g.order(), self.caps.homogeneity)?;
        let n = g.order();
        let limit = self.caps.restriction_table >> n;
        let table = endos(g, y, limit).map(|maps| restriction_table(&maps, n));
        let mut checked = 0usize;
        for size in 1..=n {
            for dom in (0..n).combinations(size) {
                let search = MapSearch { src: g, tgt: g, dom: &dom, shape: x.shape() };
                let found = search.run(&mut Vec::new(), &mut |img| {
                    checked += 1;
                    let extends = match &table {
                        Some(t) => t.contains(&restriction_key(&dom, img)),
                        None => extends_dfs(g, &dom, img, y),
                    };
                    if extends {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(to_local(&dom, img))
                    }
                });
                if let ControlFlow::Break(f) = found {
                    return Ok(XyVerdict { holds: false, counterexample: Some(f), local_maps: checked });
                }
            }
        }
        Ok(XyVerdict { holds: true, counterexample: None, local_maps: checked })
    }

    /// Whether represented sets agree across all embedding pairs of each pair of age
    /// graphs, for a graph in which every local isomorphism extends to a bimorphism.
    pub fn verify_embedding_independence(&self, g: &FiniteGraph, size: usize) -> Result<bool, LabError> {
        let pre = self.check_xy_homogeneity(g, LocalKind::I, EndoKind::B)?;
        if !pre.holds {
            return Err(LabError::Precondition(format!(
                "local isomorphism {:?} does not extend to a bimorphism",
                pre.counterexample.expect("failing verdicts carry a counterexample")
            )));
        }
        let rs = self.represented_sets(g, size)?;
        let mut first: HashMap<(usize, usize), &BTreeSet<Vec<Vertex>>> = HashMap::new();
        Ok(rs.sets.iter().all(|(k, set)| *first.entry((k.source, k.target)).or_insert(set) == set))
    }

    /// Every (X, Y) verdict for every canonical graph of order `1..=max_order`.
    pub fn census(&self, max_order: usize) -> Result<Vec<CensusRow>, LabError> {
        check_cap(max_order, self.caps.homogeneity)?;
        let mut rows = Vec::new();
        for n in 1..=max_order {
            for g in all_graphs(n)? {
                let id = graph_id(&g);
                for x in LocalKind::ALL {
                    for y in EndoKind::ALL {
                        let v = self.check_xy_homogeneity(&g, x, y)?;
                        rows.push(CensusRow { graph_id: id.clone(), x, y, verdict: v.holds });
                    }
                }
            }
        }
        Ok(rows)
    }
}

/// Identifier of a canonical graph: order and adjacency code in hex.
pub fn graph_id(g: &FiniteGraph) -> String {
    format!("n{}-{:x}", g.order(), g.code())
}

/// Total endomorphisms of kind `kind`, or `None` once more than `limit` are found.
fn endos(g: &FiniteGraph, kind: EndoKind, limit: usize) -> Option<Vec<Vec<usize>>> {
    let dom: Vec<usize> = (0..g.order()).collect();
    let search = MapSearch { src: g, tgt: g, dom: &dom, shape: kind.shape() };
    let mut out = Vec::new();
    let r = search.run(&mut Vec::new(), &mut |img| {
        if out.len() >= limit {
            return ControlFlow::Break(());
        }
        out.push(img.to_vec());
        ControlFlow::Continue(())
    });
    r.is_continue().then_some(out)
}

fn restriction_key(dom: &[usize], img: &[usize]) -> u64 {
    let mask = dom.iter().fold(0u64, |m, &x| m | (1 << x));
    img.iter().enumerate().fold(mask, |k, (i, &y)| k | ((y as u64) << (8 + 3 * i)))
}

/// Every restriction of every map to every nonempty subset, keyed by domain mask and images.
fn restriction_table(maps: &[Vec<usize>], n: usize) -> HashSet<u64> {
    let mut out = HashSet::new();
    for f in maps {
        for mask in 1u32..(1 << n) {
            let dom: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let img: Vec<usize> = dom.iter().map(|&i| f[i]).collect();
            out.insert(restriction_key(&dom, &img));
        }
    }
    out
}

/// Whether the local map `dom → img` extends to a total endomorphism of kind `kind`.
fn extends_dfs(g: &FiniteGraph, dom: &[usize], img: &[usize], kind: EndoKind) -> bool {
    let mut order = dom.to_vec();
    order.extend((0..g.order()).filter(|v| !dom.contains(v)));
    let search = MapSearch { src: g, tgt: g, dom: &order, shape: kind.shape() };
    if !search.prefix_ok(img) {
        return false;
    }
    search.run(&mut img.to_vec(), &mut |_| ControlFlow::Break(())).is_break()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RepresentedKey {
    /// Index into `ages` of the domain graph.
    pub source: usize,
    /// Index into `ages` of the codomain graph.
    pub target: usize,
    /// Index into `embeddings[source]`.
    pub e: usize,
    /// Index into `embeddings[target]`.
    pub e_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentedSets {
    pub size: usize,
    pub ages: Vec<FiniteGraph>,
    pub embeddings: Vec<Vec<LocalMorphism>>,
    /// Represented maps `f`, each stored as its image list over `0..size`.
    pub sets: BTreeMap<RepresentedKey, BTreeSet<Vec<Vertex>>>,
}

impl RepresentedSets {
    pub fn get(&self, key: &RepresentedKey) -> Vec<LocalMorphism> {
        let dom: Vec<Vertex> = (0..self.size as Vertex).collect();
        self.sets
            .get(key)
            .into_iter()
            .flatten()
            .map(|img| LocalMorphism::new(dom.clone(), img.clone()).expect("aligned"))
            .collect()
    }

    pub fn contains(&self, key: &RepresentedKey, f: &LocalMorphism) -> bool {
        let dom_ok = f.dom.iter().copied().eq(0..self.size as Vertex);
        dom_ok && self.sets.get(key).is_some_and(|s| s.contains(&f.img))
    }

    pub fn age_index(&self, a: &FiniteGraph) -> Option<usize> {
        let c = a.canonical().ok()?.graph;
        self.ages.iter().position(|x| *x == c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XyVerdict {
    pub holds: bool,
    pub counterexample: Option<LocalMorphism>,
    /// Local maps examined before stopping.
    pub local_maps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub graph_id: String,
    #[serde(rename = "X")]
    pub x: LocalKind,
    #[serde(rename = "Y")]
    pub y: EndoKind,
    pub verdict: bool,
}

pub fn census_csv(rows: &[CensusRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn enumerate_morphisms(a: &FiniteGraph, b: &FiniteGraph, kind: MorphismKind) -> Result<MorphismSet, LabError> {
    Lab::default().enumerate_morphisms(a, b, kind)
}

pub fn bimorphism_monoid(g: &FiniteGraph) -> Result<Vec<LocalMorphism>, LabError> {
    Lab::default().bimorphism_monoid(g)
}

pub fn represented_sets(g: &FiniteGraph, size: usize) -> Result<RepresentedSets, LabError> {
    Lab::default().represented_sets(g, size)
}

pub fn check_xy_homogeneity(g: &FiniteGraph, x: LocalKind, y: EndoKind) -> Result<XyVerdict, LabError> {
    Lab::default().check_xy_homogeneity(g, x, y)
}

pub fn verify_embedding_independence(g: &FiniteGraph, size: usize) -> Result<bool, LabError> {
    Lab::default().verify_embedding_independence(g, size)
}

/// All vertices of `g` outside `xs` adjacent to every vertex of `xs`.
pub fn all_cones(g: &FiniteGraph, xs: &[usize]) -> Vec<usize> {
    (0..g.order()).filter(|v| !xs.contains(v) && xs.iter().all(|&x| g.has_edge(*v, x))).collect()
}

/// All vertices of `g` outside `xs` adjacent to no vertex of `xs`.
pub fn all_cocones(g: &FiniteGraph, xs: &[usize]) -> Vec<usize> {
    (0..g.order()).filter(|v| !xs.contains(v) && xs.iter().all(|&x| !g.has_edge(*v, x))).collect()
}

/// Whether the local map extends to a bimorphism of `g`.
pub fn extends_to_bimorphism(g: &FiniteGraph, f: &LocalMorphism) -> bool {
    let dom: Vec<usize> = f.dom.iter().map(|&x| x as usize).collect();
    let img: Vec<usize> = f.img.iter().map(|&y| y as usize).collect();
    extends_dfs(g, &dom, &img, EndoKind::B)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> FiniteGraph {
        FiniteGraph::complete(2)
    }

    #[test]
    fn morphism_counts() {
        let k1 = FiniteGraph::complete(1);
        assert_eq!(enumerate_morphisms(&k1, &FiniteGraph::complete(3), MorphismKind::Monomorphism).unwrap().len(), 3);
        assert_eq!(enumerate_morphisms(&k2(), &FiniteGraph::cycle(4), MorphismKind::Embedding).unwrap().len(), 8);
        let pair = FiniteGraph::empty(2);
        let mon = enumerate_morphisms(&pair, &k2(), MorphismKind::Monomorphism).unwrap();
        assert_eq!(mon.len(), 2);
        let too_big = FiniteGraph::empty(9);
        assert_eq!(
            enumerate_morphisms(&too_big, &k2(), MorphismKind::Homomorphism),
            Err(LabError::SizeCap { order: 9, cap: 8 })
        );
    }

    #[test]
    fn monoid_sizes() {
        assert_eq!(bimorphism_monoid(&FiniteGraph::complete(3)).unwrap().len(), 6);
        assert_eq!(bimorphism_monoid(&FiniteGraph::path(3)).unwrap().len(), 2);
        assert_eq!(bimorphism_monoid(&FiniteGraph::cycle(5)).unwrap().len(), 10);
    }

    #[test]
    fn represented_examples() {
        let rs = represented_sets(&FiniteGraph::complete(3), 2).unwrap();
        assert_eq!(rs.ages, vec![k2()]);
        assert_eq!(rs.sets.len(), 36);
        assert!(rs.sets.values().all(|s| s.len() == 2));

        let p3 = FiniteGraph::path(3);
        let rs = represented_sets(&p3, 2).unwrap();
        let pair = rs.age_index(&FiniteGraph::empty(2)).unwrap();
        let edge = rs.age_index(&k2()).unwrap();
        let m = LocalMorphism::new(vec![0, 1], vec![0, 1]).unwrap();
        for (k, _) in rs.sets.iter().filter(|(k, _)| k.source == pair && k.target == edge) {
            assert!(!rs.contains(k, &m));
        }
        let id = LocalMorphism::identity(&[0, 1]);
        for (k, _) in rs.sets.iter().filter(|(k, _)| k.source == k.target && k.e == k.e_prime) {
            assert!(rs.contains(k, &id));
        }
    }

    #[test]
    fn xy_examples() {
        for n in 1..=4 {
            let kn = FiniteGraph::complete(n);
            for x in LocalKind::ALL {
                for y in [EndoKind::A, EndoKind::B, EndoKind::I] {
                    assert!(check_xy_homogeneity(&kn, x, y).unwrap().holds, "K{n} {x}{y}");
                }
            }
        }
        assert!(check_xy_homogeneity(&FiniteGraph::cycle(5), LocalKind::I, EndoKind::A).unwrap().holds);
        let v = check_xy_homogeneity(&FiniteGraph::path(3), LocalKind::I, EndoKind::A).unwrap();
        assert!(!v.holds);
        let f = v.counterexample.unwrap();
        assert_eq!(f.len(), 1);
        // An endpoint sent to the centre, or the centre to an endpoint.
        assert!(f.dom[0] != 1 && f.img[0] == 1 || f.dom[0] == 1 && f.img[0] != 1);
    }

    #[test]
    fn embedding_independence_examples() {
        assert_eq!(verify_embedding_independence(&FiniteGraph::complete(4), 2), Ok(true));
        assert_eq!(verify_embedding_independence(&FiniteGraph::cycle(5), 2), Ok(true));
        let two_k2 = k2().disjoint_union(&k2());
        let r = verify_embedding_independence(&two_k2, 2);
        assert!(matches!(r, Ok(true) | Err(LabError::Precondition(_))), "{r:?}");
        assert!(matches!(verify_embedding_independence(&FiniteGraph::path(3), 2), Err(LabError::Precondition(_))));
    }

    #[test]
    fn census_rows() {
        let rows = Lab::default().census(3).unwrap();
        assert_eq!(rows.len(), (1 + 2 + 4) * 18);
        assert!(rows.iter().any(|r| r.graph_id == "n3-7" && r.verdict));
        let csv = census_csv(&rows[..1]).unwrap();
        assert_eq!(csv, "graph_id,X,Y,verdict\nn1-0,I,H,true\n");
    }
}
