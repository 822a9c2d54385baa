use serde::{Deserialize, Serialize};

use super::{Adjacency, GraphError, Vertex};

/// Explicit simple graph on `{0..order-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    order: usize,
    matrix: Vec<bool>,
}

impl FiniteGraph {
    pub fn empty(order: usize) -> Self {
        FiniteGraph { order, matrix: vec![false; order * order] }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Self::empty(order);
        if order >= 3 {
            for u in 0..order {
                g.add_edge(u, (u + 1) % order);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 1..order {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(order);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::OutOfRange { vertex: x as Vertex, order });
                }
            }
            if u == v {
                return Err(GraphError::DuplicateVertex(u as Vertex));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph whose edge set is read from the bits of `code`, one bit per pair
    /// `(i,j)` with `i < j`, pairs taken column by column (`j` major) and the
    /// first pair in the most significant position.
    pub fn from_code(order: usize, code: u64) -> Self {
        let total = order * order.saturating_sub(1) / 2;
        let mut g = Self::empty(order);
        let mut bit = total;
        for j in 1..order {
            for i in 0..j {
                bit -= 1;
                if (code >> bit) & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Inverse of [`FiniteGraph::from_code`]; requires `order <= 11`.
    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        for j in 1..self.order {
            for i in 0..j {
                code = (code << 1) | u64::from(self.has_edge(i, j));
            }
        }
        code
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "invalid edge ({u},{v})");
        self.matrix[u * self.order + v] = true;
        self.matrix[v * self.order + u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.matrix[u * self.order + v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .flat_map(|u| (u + 1..self.order).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.matrix.iter().filter(|&&b| b).count() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&v| self.has_edge(u, v))
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.order);
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `vs` (local index `i` is `vs[i]`).
    pub fn induced(&self, vs: &[usize]) -> Self {
        let mut g = Self::empty(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.induced(perm)
    }

    /// Disjoint union, right operand shifted past the left.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = Self::empty(self.order + other.order);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.order, v + self.order);
        }
        g
    }
}

impl Adjacency for FiniteGraph {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order as Vertex && v < self.order as Vertex && self.has_edge(u as usize, v as usize)
    }
    fn order(&self) -> Option<u64> {
        Some(self.order as u64)
    }
}

impl std::fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGraph({}, {:?})", self.order, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for FiniteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { order: self.order, edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        FiniteGraph::from_edges(w.order, &w.edges).map_err(serde::de::Error::custom)
    }
}
