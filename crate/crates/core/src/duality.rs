//! Bimorphisms, antibimorphisms and complements.

use serde::Serialize;
use thiserror::Error;

use crate::extension::PartialBimorphism;
use crate::graph::{Adjacency, Complement, FiniteGraph};
use crate::morphism::{LocalMorphism, MorphismError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("map is not a bijection between graphs of order {source_order} and {target_order}")]
    NotBijective { source_order: usize, target_order: usize },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// A bijection together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionWitness {
    forward: LocalMorphism,
    inverse: LocalMorphism,
}

impl BijectionWitness {
    pub fn new(forward: LocalMorphism) -> Result<Self, DualityError> {
        let inverse = forward.inverse()?;
        Ok(BijectionWitness { forward, inverse })
    }

    /// The bijection `i ↦ perm[i]` on `{0..n-1}`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, DualityError> {
        let dom = (0..perm.len() as u64).collect();
        let img = perm.iter().map(|&x| x as u64).collect();
        Self::new(LocalMorphism::new(dom, img)?)
    }

    pub fn forward(&self) -> &LocalMorphism {
        &self.forward
    }

    pub fn inverse(&self) -> &LocalMorphism {
        &self.inverse
    }
}

fn check_total_bijection(f: &LocalMorphism, g: &FiniteGraph, h: &FiniteGraph) -> Result<(), DualityError> {
    let err = DualityError::NotBijective { source_order: g.order(), target_order: h.order() };
    if g.order() != h.order() || f.len() != g.order() {
        return Err(err);
    }
    let mut dom_seen = vec![false; g.order()];
    let mut img_seen = vec![false; h.order()];
    for (x, y) in f.pairs() {
        let (x, y) = (x as usize, y as usize);
        if x >= g.order() || y >= h.order() || dom_seen[x] || img_seen[y] {
            return Err(err);
        }
        dom_seen[x] = true;
        img_seen[y] = true;
    }
    Ok(())
}

fn preserves<G: Adjacency, H: Adjacency>(f: &LocalMorphism, g: &G, h: &H) -> bool {
    let pairs: Vec<_> = f.pairs().collect();
    pairs
        .iter()
        .enumerate()
        .all(|(i, &(u, fu))| pairs[i + 1..].iter().all(|&(v, fv)| !g.adjacent(u, v) || h.adjacent(fu, fv)))
}

/// Total bijection `g → h` sending edges to edges.
pub fn is_bimorphism(f: &LocalMorphism, g: &FiniteGraph, h: &FiniteGraph) -> Result<bool, DualityError> {
    check_total_bijection(f, g, h)?;
    Ok(preserves(f, g, h))
}

/// Total bijection `g → h` sending nonedges to nonedges.
pub fn is_antibimorphism(f: &LocalMorphism, g: &FiniteGraph, h: &FiniteGraph) -> Result<bool, DualityError> {
    check_total_bijection(f, g, h)?;
    let pairs: Vec<_> = f.pairs().collect();
    Ok(pairs
        .iter()
        .enumerate()
        .all(|(i, &(u, fu))| pairs[i + 1..].iter().all(|&(v, fv)| g.adjacent(u, v) || !h.adjacent(fu, fv))))
}

/// The four equivalent descriptions of a bimorphism, each evaluated on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `F` is a bimorphism `G → H`.
    pub bimorphism: bool,
    /// `F` is an antibimorphism `Ḡ → H̄`.
    pub complement_antibimorphism: bool,
    /// `F⁻¹` is a bimorphism `H̄ → Ḡ`.
    pub inverse_complement_bimorphism: bool,
    /// `F⁻¹` is an antibimorphism `H → G`.
    pub inverse_antibimorphism: bool,
}

impl DualityReport {
    pub fn clauses(&self) -> [bool; 4] {
        [
            self.bimorphism,
            self.complement_antibimorphism,
            self.inverse_complement_bimorphism,
            self.inverse_antibimorphism,
        ]
    }

    pub fn agree(&self) -> bool {
        let c = self.clauses();
        c.iter().all(|&b| b == c[0])
    }
}

pub fn verify_duality_quadruple(
    w: &BijectionWitness,
    g: &FiniteGraph,
    h: &FiniteGraph,
) -> Result<DualityReport, DualityError> {
    let g_bar = g.complement();
    let h_bar = h.complement();
    Ok(DualityReport {
        bimorphism: is_bimorphism(&w.forward, g, h)?,
        complement_antibimorphism: is_antibimorphism(&w.forward, &g_bar, &h_bar)?,
        inverse_complement_bimorphism: is_bimorphism(&w.inverse, &h_bar, &g_bar)?,
        inverse_antibimorphism: is_antibimorphism(&w.inverse, h, g)?,
    })
}

/// `p⁻¹ : R → D`. It preserves nonedges of the underlying graph.
pub fn invert_partial_bimorphism(p: &PartialBimorphism) -> LocalMorphism {
    let f = p.to_local_morphism();
    f.inverse().expect("partial bimorphisms are injective")
}

/// Whether `f` sends nonedges of `g` to nonedges of `g`, i.e. is edge-preserving in `Ḡ`.
pub fn preserves_nonedges<G: Adjacency>(f: &LocalMorphism, g: &G) -> bool {
    preserves(f, &Complement(g), &Complement(g))
}

/// Whether `f` sends edges of `g` to edges of `g`.
pub fn preserves_edges<G: Adjacency>(f: &LocalMorphism, g: &G) -> bool {
    preserves(f, g, g)
}
