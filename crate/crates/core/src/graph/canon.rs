use std::collections::BTreeSet;

use super::{FiniteGraph, GraphError};

/// Largest order accepted by [`FiniteGraph::canonical`].
pub const MAX_CANONICAL_ORDER: usize = 10;

/// Canonical representative of an isomorphism class together with the relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub graph: FiniteGraph,
    /// Canonical vertex `i` is original vertex `perm[i]`.
    pub perm: Vec<usize>,
}

impl FiniteGraph {
    /// Relabeling with the lexicographically least adjacency code (see
    /// [`FiniteGraph::code`]); isomorphic graphs get identical canonical graphs.
    pub fn canonical(&self) -> Result<Canonical, GraphError> {
        let n = self.order();
        if n > MAX_CANONICAL_ORDER {
            return Err(GraphError::TooLarge { order: n, max: MAX_CANONICAL_ORDER });
        }
        let mut search = Search {
            g: self,
            total: n * n.saturating_sub(1) / 2,
            best: None,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
        };
        search.run(0, 0);
        let (_, perm) = search.best.expect("at least one ordering exists");
        Ok(Canonical { graph: self.permuted(&perm), perm })
    }

    pub fn is_isomorphic(&self, other: &FiniteGraph) -> Result<bool, GraphError> {
        Ok(self.order() == other.order()
            && self.edge_count() == other.edge_count()
            && self.canonical()?.graph == other.canonical()?.graph)
    }
}

struct Search<'a> {
    g: &'a FiniteGraph,
    total: usize,
    best: Option<(u64, Vec<usize>)>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, prefix: u64, bits: usize) {
        let n = self.g.order();
        let j = self.perm.len();
        if j == n {
            if self.best.as_ref().is_none_or(|(code, _)| prefix < *code) {
                self.best = Some((prefix, self.perm.clone()));
            }
            return;
        }
        for x in 0..n {
            if self.used[x] {
                continue;
            }
            let mut code = prefix;
            for &y in &self.perm {
                code = (code << 1) | u64::from(self.g.has_edge(y, x));
            }
            let len = bits + j;
            if let Some((best, _)) = &self.best {
                if code > best >> (self.total - len) {
                    continue;
                }
            }
            self.used[x] = true;
            self.perm.push(x);
            self.run(code, len);
            self.perm.pop();
            self.used[x] = false;
        }
    }
}

/// One canonical representative of every graph of order exactly `n`, sorted by code.
pub fn all_graphs(n: usize) -> Result<Vec<FiniteGraph>, GraphError> {
    if n > MAX_CANONICAL_ORDER {
        return Err(GraphError::TooLarge { order: n, max: MAX_CANONICAL_ORDER });
    }
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = FiniteGraph::from_code(k, code);
            for nbrs in 0u32..(1 << k) {
                let mut h = FiniteGraph::empty(k + 1);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..k {
                    if (nbrs >> u) & 1 == 1 {
                        h.add_edge(u, k);
                    }
                }
                next.insert(h.canonical()?.graph.code());
            }
        }
        level = next;
    }
    if n == 0 {
        return Ok(vec![FiniteGraph::empty(0)]);
    }
    Ok(level.into_iter().map(|c| FiniteGraph::from_code(n, c)).collect())
}
