//! Graphs: the adjacency abstraction, lazy countable oracles, and explicit finite graphs.

mod canon;
mod finite;
mod gf2;
mod grammar;
mod oracle;

pub use canon::{all_graphs, Canonical};
pub use finite::FiniteGraph;
pub use grammar::{GraphSpec, ParseError};
pub use oracle::CountableGraph;

use thiserror::Error;

/// Vertices of every graph are natural numbers.
pub type Vertex = u64;

/// Boxed ascending vertex stream returned by [`Adjacency::candidates`].
pub type Candidates<'a> = Box<dyn Iterator<Item = Vertex> + 'a>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0} in vertex list")]
    DuplicateVertex(Vertex),
    #[error("vertex {vertex} is outside a graph of order {order}")]
    OutOfRange { vertex: Vertex, order: usize },
    #[error("canonical form supports order at most {max}, got {order}")]
    TooLarge { order: usize, max: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A symmetric, irreflexive adjacency relation on an initial segment of the naturals.
pub trait Adjacency {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;

    /// `Some(n)` when the vertex set is `{0..n-1}`, `None` when it is all of ℕ.
    fn order(&self) -> Option<u64> {
        None
    }

    /// Ascending stream of vertices `>= from` that is guaranteed to contain every
    /// vertex outside `adj ∪ non` adjacent to all of `adj` and to none of `non`.
    ///
    /// Extra vertices are allowed; callers re-check every candidate. Oracles with
    /// exploitable structure override this to skip hopeless stretches of ℕ.
    fn candidates(&self, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'_> {
        let _ = (adj, non);
        match self.order() {
            Some(n) => Box::new(from..n),
            None => Box::new(from..=Vertex::MAX),
        }
    }

    fn is_vertex(&self, v: Vertex) -> bool {
        self.order().is_none_or(|n| v < n)
    }
}

impl<G: Adjacency + ?Sized> Adjacency for &G {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        (**self).adjacent(u, v)
    }
    fn order(&self) -> Option<u64> {
        (**self).order()
    }
    fn candidates(&self, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'_> {
        (**self).candidates(adj, non, from)
    }
}

/// Complement view: same vertices, adjacency negated off the diagonal.
#[derive(Debug, Clone, Copy)]
pub struct Complement<G>(pub G);

impl<G: Adjacency> Adjacency for Complement<G> {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && !self.0.adjacent(u, v)
    }
    fn order(&self) -> Option<u64> {
        self.0.order()
    }
    fn candidates(&self, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'_> {
        self.0.candidates(non, adj, from)
    }
}

/// True when no two vertices of `set` are adjacent.
pub fn is_independent<G: Adjacency + ?Sized>(g: &G, set: &[Vertex]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.adjacent(u, v)))
}

/// True when every two distinct vertices of `set` are adjacent.
pub fn is_clique<G: Adjacency + ?Sized>(g: &G, set: &[Vertex]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u == v || g.adjacent(u, v)))
}

/// Number of edges induced on `set`.
pub fn edge_count<G: Adjacency + ?Sized>(g: &G, set: &[Vertex]) -> usize {
    set.iter().enumerate().map(|(i, &u)| set[i + 1..].iter().filter(|&&v| g.adjacent(u, v)).count()).sum()
}

/// Induced subgraph on `xs`; local vertex `i` corresponds to `xs[i]`.
pub fn induced_subgraph<G: Adjacency + ?Sized>(g: &G, xs: &[Vertex]) -> Result<FiniteGraph, GraphError> {
    let mut seen = std::collections::HashSet::with_capacity(xs.len());
    for &x in xs {
        if !seen.insert(x) {
            return Err(GraphError::DuplicateVertex(x));
        }
        if !g.is_vertex(x) {
            let order = g.order().unwrap_or(0) as usize;
            return Err(GraphError::OutOfRange { vertex: x, order });
        }
    }
    let mut h = FiniteGraph::empty(xs.len());
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if g.adjacent(xs[i], xs[j]) {
                h.add_edge(i, j);
            }
        }
    }
    Ok(h)
}

/// DOT rendering of the induced prefix `{0..n-1}`.
pub fn to_dot<G: Adjacency + ?Sized>(g: &G, n: u64, name: &str) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
    for v in 0..n {
        let _ = writeln!(out, "  {v};");
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.adjacent(u, v) {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}
