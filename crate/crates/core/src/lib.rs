//! Executable machinery for bimorphisms of countable graphs.
//!
//! * [`graph`]: adjacency oracles, finite graphs, canonical forms, the graph description grammar.
//! * [`morphism`]: local morphisms, their classification, manifestation squares.
//! * [`duality`]: bimorphism / antibimorphism / complement equivalences.
//! * [`extension`]: back-and-forth search for partial bimorphisms and clique forcing.
//! * [`invariants`]: bounded independence and star numbers, cone properties.
//! * [`classifier`]: bounded evidence for the MB-homogeneous / ultrahomogeneous split.
//! * [`lab`]: exact brute force on small finite graphs.

pub mod classifier;
pub mod duality;
pub mod extension;
pub mod graph;
pub mod invariants;
pub mod lab;
pub mod morphism;

pub use graph::{Adjacency, Complement, CountableGraph, FiniteGraph, GraphSpec, Vertex};
