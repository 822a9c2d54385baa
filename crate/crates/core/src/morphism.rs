//! Finite partial maps between graphs and their classification.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Adjacency, Vertex};

/// Source/target label used when a map lives between explicit finite graphs.
pub const FINITE: &str = "finite";

fn finite_label() -> String {
    FINITE.to_string()
}

/// Finite partial map `dom[i] ↦ img[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalMorphism {
    pub dom: Vec<Vertex>,
    pub img: Vec<Vertex>,
    #[serde(default = "finite_label")]
    pub src: String,
    #[serde(default = "finite_label")]
    pub tgt: String,
}

/// Strength of a map, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    NotHomomorphism,
    Homomorphism,
    Monomorphism,
    Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("domain and image lengths differ ({dom} vs {img})")]
    LengthMismatch { dom: usize, img: usize },
    #[error("vertex {0} appears twice in the domain")]
    DuplicateDomain(Vertex),
    #[error("vertex {vertex} lies outside the {side} graph")]
    OutOfRange { vertex: Vertex, side: &'static str },
    #[error("vertex {0} is not in the domain")]
    NotInDomain(Vertex),
    #[error("map is not injective: {0} has two preimages")]
    NotInjective(Vertex),
    #[error("maps are not aligned: {0}")]
    ShapeMismatch(String),
}

impl LocalMorphism {
    pub fn new(dom: Vec<Vertex>, img: Vec<Vertex>) -> Result<Self, MorphismError> {
        Self::labeled(dom, img, FINITE, FINITE)
    }

    pub fn labeled(
        dom: Vec<Vertex>,
        img: Vec<Vertex>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Result<Self, MorphismError> {
        let f = LocalMorphism { dom, img, src: src.into(), tgt: tgt.into() };
        f.validate()?;
        Ok(f)
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Result<Self, MorphismError> {
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    pub fn identity(vs: &[Vertex]) -> Self {
        Self::new(vs.to_vec(), vs.to_vec()).expect("identity needs distinct vertices")
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new()).expect("empty map is valid")
    }

    /// Checks the structural invariants (used after deserializing).
    pub fn validate(&self) -> Result<(), MorphismError> {
        if self.dom.len() != self.img.len() {
            return Err(MorphismError::LengthMismatch { dom: self.dom.len(), img: self.img.len() });
        }
        let mut seen = HashSet::with_capacity(self.dom.len());
        for &x in &self.dom {
            if !seen.insert(x) {
                return Err(MorphismError::DuplicateDomain(x));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dom.is_empty()
    }

    pub fn get(&self, x: Vertex) -> Option<Vertex> {
        self.dom.iter().position(|&d| d == x).map(|i| self.img[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.dom.iter().copied().zip(self.img.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        let set: HashSet<_> = self.img.iter().collect();
        set.len() == self.img.len()
    }

    pub fn with_labels(mut self, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        self.src = src.into();
        self.tgt = tgt.into();
        self
    }

    /// `self ∘ f`: apply `f`, then `self`.
    pub fn after(&self, f: &LocalMorphism) -> Result<LocalMorphism, MorphismError> {
        compose(self, f)
    }

    pub fn inverse(&self) -> Result<LocalMorphism, MorphismError> {
        let mut seen = HashSet::new();
        for &y in &self.img {
            if !seen.insert(y) {
                return Err(MorphismError::NotInjective(y));
            }
        }
        Ok(LocalMorphism { dom: self.img.clone(), img: self.dom.clone(), src: self.tgt.clone(), tgt: self.src.clone() })
    }
}

/// Strongest kind `f` belongs to as a map from `src` to `tgt`.
pub fn classify_map<S, T>(f: &LocalMorphism, src: &S, tgt: &T) -> Result<MorphismKind, MorphismError>
where
    S: Adjacency + ?Sized,
    T: Adjacency + ?Sized,
{
    f.validate()?;
    if let Some(&x) = f.dom.iter().find(|&&x| !src.is_vertex(x)) {
        return Err(MorphismError::OutOfRange { vertex: x, side: "source" });
    }
    if let Some(&y) = f.img.iter().find(|&&y| !tgt.is_vertex(y)) {
        return Err(MorphismError::OutOfRange { vertex: y, side: "target" });
    }
    let n = f.len();
    let mut reflects = true;
    for i in 0..n {
        for j in i + 1..n {
            let edge = src.adjacent(f.dom[i], f.dom[j]);
            let image_edge = tgt.adjacent(f.img[i], f.img[j]);
            if edge && !image_edge {
                return Ok(MorphismKind::NotHomomorphism);
            }
            if !edge && image_edge {
                reflects = false;
            }
        }
    }
    Ok(if !f.is_injective() {
        MorphismKind::Homomorphism
    } else if reflects {
        MorphismKind::Embedding
    } else {
        MorphismKind::Monomorphism
    })
}

/// `g ∘ f`; requires the image of `f` to lie in the domain of `g`.
pub fn compose(g: &LocalMorphism, f: &LocalMorphism) -> Result<LocalMorphism, MorphismError> {
    let table: HashMap<Vertex, Vertex> = g.pairs().collect();
    let img = f
        .img
        .iter()
        .map(|y| table.get(y).copied().ok_or(MorphismError::NotInDomain(*y)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalMorphism { dom: f.dom.clone(), img, src: f.src.clone(), tgt: g.tgt.clone() })
}

/// Restriction of `f` to `ys`, listed in the order of `ys`.
pub fn restrict(f: &LocalMorphism, ys: &[Vertex]) -> Result<LocalMorphism, MorphismError> {
    let img = ys.iter().map(|&y| f.get(y).ok_or(MorphismError::NotInDomain(y))).collect::<Result<Vec<_>, _>>()?;
    let mut r = LocalMorphism::new(ys.to_vec(), img)?;
    r.src = f.src.clone();
    r.tgt = f.tgt.clone();
    Ok(r)
}

/// Whether `f` is manifested by `age_map` over `e_a`, `e_b`, i.e. `e_b ∘ age_map = f ∘ e_a`
/// pointwise on the domain of `e_a`.
pub fn is_manifestation(
    f: &LocalMorphism,
    age_map: &LocalMorphism,
    e_a: &LocalMorphism,
    e_b: &LocalMorphism,
) -> Result<bool, MorphismError> {
    let a_dom: HashSet<_> = e_a.dom.iter().collect();
    let af_dom: HashSet<_> = age_map.dom.iter().collect();
    if a_dom != af_dom {
        return Err(MorphismError::ShapeMismatch("age map and source embedding have different domains".into()));
    }
    for (a, ea) in e_a.pairs() {
        let b = age_map.get(a).expect("domains checked equal");
        let left = e_b
            .get(b)
            .ok_or_else(|| MorphismError::ShapeMismatch(format!("age vertex {b} is not in the target embedding")))?;
        let right = f.get(ea).ok_or_else(|| {
            MorphismError::ShapeMismatch(format!("vertex {ea} is not in the domain of the local map"))
        })?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least pair `(a,b)`, `a < b < horizon`, in lexicographic order satisfying `pred`.
pub fn least_pair<G: Adjacency + ?Sized>(
    g: &G,
    horizon: Vertex,
    pred: impl Fn(bool) -> bool,
) -> Option<(Vertex, Vertex)> {
    let h = g.order().map_or(horizon, |n| n.min(horizon));
    (0..h).find_map(|a| (a + 1..h).find(|&b| pred(g.adjacent(a, b))).map(|b| (a, b)))
}

/// The two-point monomorphism sending the least nonedge to the least edge below `horizon`.
pub fn canonical_m<G: Adjacency + ?Sized>(g: &G, horizon: Vertex) -> Option<LocalMorphism> {
    let (a, b) = least_pair(g, horizon, |e| !e)?;
    let (u, v) = least_pair(g, horizon, |e| e)?;
    Some(LocalMorphism::new(vec![a, b], vec![u, v]).expect("distinct endpoints"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CountableGraph, FiniteGraph};

    fn lm(dom: &[u64], img: &[u64]) -> LocalMorphism {
        LocalMorphism::new(dom.to_vec(), img.to_vec()).unwrap()
    }

    #[test]
    fn classification_examples() {
        let rado = CountableGraph::rado();
        assert_eq!(classify_map(&LocalMorphism::identity(&[3, 5, 9]), &rado, &rado), Ok(MorphismKind::Embedding));
        // (0,2) is a nonedge of rado and (0,1) an edge.
        assert_eq!(classify_map(&lm(&[0, 2], &[0, 1]), &rado, &rado), Ok(MorphismKind::Monomorphism));
        assert_eq!(classify_map(&lm(&[0, 1], &[0, 2]), &rado, &rado), Ok(MorphismKind::NotHomomorphism));
        assert_eq!(classify_map(&lm(&[0, 2], &[1, 1]), &rado, &rado), Ok(MorphismKind::Homomorphism));
        let k3 = FiniteGraph::complete(3);
        assert_eq!(
            classify_map(&lm(&[0], &[3]), &k3, &k3),
            Err(MorphismError::OutOfRange { vertex: 3, side: "target" })
        );
    }

    #[test]
    fn kind_order() {
        use MorphismKind::*;
        assert!(NotHomomorphism < Homomorphism && Homomorphism < Monomorphism && Monomorphism < Embedding);
        assert_eq!(serde_json::to_string(&NotHomomorphism).unwrap(), "\"not-homomorphism\"");
    }

    #[test]
    fn compose_and_restrict() {
        let id = LocalMorphism::identity(&[0, 1, 2]);
        assert_eq!(restrict(&id, &[0, 1]).unwrap(), LocalMorphism::identity(&[0, 1]));
        assert_eq!(restrict(&id, &[7]), Err(MorphismError::NotInDomain(7)));
        let f = lm(&[0, 1], &[5, 6]);
        let g = lm(&[5, 6, 7], &[1, 0, 2]);
        assert_eq!(compose(&g, &f).unwrap(), lm(&[0, 1], &[1, 0]));
        assert_eq!(compose(&f, &g), Err(MorphismError::NotInDomain(2)));
    }

    #[test]
    fn composition_kinds() {
        let rado = CountableGraph::rado();
        let e1 = LocalMorphism::identity(&[0, 2]);
        let e2 = lm(&[0, 2], &[4, 6]);
        assert_eq!(classify_map(&e2, &rado, &rado), Ok(MorphismKind::Embedding));
        assert_eq!(classify_map(&compose(&e2, &e1).unwrap(), &rado, &rado), Ok(MorphismKind::Embedding));
        // m followed by an embedding of its image edge stays a monomorphism.
        let m = lm(&[0, 2], &[0, 1]);
        let e = lm(&[0, 1], &[1, 3]);
        assert_eq!(classify_map(&e, &rado, &rado), Ok(MorphismKind::Embedding));
        assert_eq!(classify_map(&compose(&e, &m).unwrap(), &rado, &rado), Ok(MorphismKind::Monomorphism));
    }

    #[test]
    fn manifestation_squares() {
        // Age map m on the 2-vertex edgeless graph {0,1} to K2 {0,1}.
        let m = lm(&[0, 1], &[0, 1]);
        let e_a = lm(&[0, 1], &[0, 2]);
        let e_b = lm(&[0, 1], &[0, 1]);
        let f = lm(&[0, 2], &[0, 1]);
        assert_eq!(is_manifestation(&f, &m, &e_a, &e_b), Ok(true));
        let swapped = lm(&[0, 2], &[1, 0]);
        assert_eq!(is_manifestation(&swapped, &m, &e_a, &e_b), Ok(false));
        let id = LocalMorphism::identity(&[0, 1]);
        assert_eq!(is_manifestation(&LocalMorphism::identity(&[0, 2]), &id, &e_a, &e_a), Ok(true));
        assert!(is_manifestation(&f, &lm(&[0], &[0]), &e_a, &e_b).is_err());
        assert!(is_manifestation(&lm(&[0], &[0]), &m, &e_a, &e_b).is_err());
    }

    #[test]
    fn canonical_m_examples() {
        let c3 = CountableGraph::parse("cliques(3)").unwrap();
        assert_eq!(canonical_m(&c3, 64), Some(lm(&[0, 3], &[0, 1])));
        assert_eq!(canonical_m(&CountableGraph::rado(), 64), Some(lm(&[0, 2], &[0, 1])));
        assert_eq!(canonical_m(&CountableGraph::parse("complete").unwrap(), 64), None);
        assert_eq!(canonical_m(&CountableGraph::parse("empty").unwrap(), 64), None);
        assert_eq!(canonical_m(&c3, 3), None);
    }

    #[test]
    fn json_encoding() {
        let f: LocalMorphism = serde_json::from_str(r#"{"dom":[0],"img":[1]}"#).unwrap();
        assert_eq!(f, lm(&[0], &[1]));
        assert_eq!(
            serde_json::to_string(&f.with_labels("rado", "rado")).unwrap(),
            r#"{"dom":[0],"img":[1],"src":"rado","tgt":"rado"}"#
        );
    }
}
