use itertools::Itertools;

use super::{gf2, Adjacency, Candidates, GraphError, GraphSpec, Vertex};

/// Number of bit positions a vertex index carries.
const WORD: Vertex = 64;
const RADO_SALT: u64 = 0x5241_444f_4558_5431;

/// Deterministic lazy adjacency oracle on ℕ built from a [`GraphSpec`].
///
/// `rado` follows the BIT predicate: for `u < v`, `u ~ v` iff bit `u` of `v` is set.
/// A 64-bit index has no bit `u` once `u >= 64`, so for `64 <= u < v` adjacency is
/// the parity of `v` against a pseudorandom mask attached to `u`. Low rows stay
/// exactly BIT, and any consistent set of adjacency constraints (up to about 60
/// vertices) has solutions above every given vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CountableGraph {
    spec: GraphSpec,
    node: Node,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Rado,
    Empty,
    Complete,
    Gnp { threshold: u64, seed: u64 },
    Cliques(u64),
    Complement(Box<Node>),
    Union(Box<Node>, Box<Node>),
}

impl CountableGraph {
    pub fn new(spec: GraphSpec) -> Self {
        let node = Node::compile(&spec);
        CountableGraph { spec, node }
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        Ok(Self::new(GraphSpec::parse(text)?))
    }

    pub fn rado() -> Self {
        Self::new(GraphSpec::Rado)
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    /// Oracle for the complement graph on the same vertex set.
    pub fn complement(&self) -> Self {
        Self::new(self.spec.clone().complement())
    }
}

impl Node {
    fn compile(spec: &GraphSpec) -> Node {
        match spec {
            GraphSpec::Rado => Node::Rado,
            GraphSpec::Empty => Node::Empty,
            GraphSpec::Complete => Node::Complete,
            GraphSpec::Gnp { p, seed } => Node::Gnp { threshold: probability_threshold(*p), seed: *seed },
            GraphSpec::Cliques(k) => Node::Cliques(*k),
            GraphSpec::Complement(inner) => Node::Complement(Box::new(Node::compile(inner))),
            GraphSpec::Union(l, r) => Node::Union(Box::new(Node::compile(l)), Box::new(Node::compile(r))),
        }
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        match self {
            Node::Rado => rado_bit(lo, hi),
            Node::Empty => false,
            Node::Complete => true,
            Node::Gnp { threshold, seed } => pair_hash(*seed, lo, hi) < *threshold,
            Node::Cliques(k) => lo / k == hi / k,
            Node::Complement(inner) => !inner.adjacent(lo, hi),
            Node::Union(l, r) => match (lo % 2, hi % 2) {
                (0, 0) => l.adjacent(lo / 2, hi / 2),
                (1, 1) => r.adjacent(lo / 2, hi / 2),
                _ => false,
            },
        }
    }

    fn candidates(&self, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'_> {
        match self {
            Node::Rado => rado_candidates(adj, non, from),
            Node::Empty if !adj.is_empty() => Box::new(std::iter::empty()),
            Node::Complete if !non.is_empty() => Box::new(std::iter::empty()),
            Node::Cliques(k) if !adj.is_empty() => {
                let block = adj[0] / k;
                if adj.iter().any(|a| a / k != block) {
                    return Box::new(std::iter::empty());
                }
                let start = block.saturating_mul(*k).max(from);
                let end = block.saturating_mul(*k).saturating_add(*k);
                Box::new(start..end)
            }
            Node::Complement(inner) => inner.candidates(non, adj, from),
            Node::Union(l, r) => union_candidates(l, r, adj, non, from),
            _ => Box::new(from..=Vertex::MAX),
        }
    }
}

fn rado_bit(lo: Vertex, hi: Vertex) -> bool {
    if lo < WORD {
        (hi >> lo) & 1 == 1
    } else {
        (rado_row(lo) & hi).count_ones() % 2 == 1
    }
}

/// Mask whose parity against `v` decides `u ~ v` for `64 <= u < v`.
fn rado_row(u: Vertex) -> u64 {
    mix(RADO_SALT ^ u.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Candidates for the rado oracle.
///
/// Every low vertex is offered. Above 64, each constraint from a vertex below the
/// witness is a linear equation over GF(2) in the witness's bits, so the range is
/// cut at the high constraint vertices and each piece lists exactly the solutions
/// of the equations from constraints below it. Constraints from vertices above a
/// piece are linear in the witness's mask; a piece where they are inconsistent is skipped.
fn rado_candidates(adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'static> {
    let lows = from.min(WORD)..WORD;
    let mut system = gf2::System::new();
    let mut highs: Vec<(Vertex, bool)> = Vec::new();
    for (xs, side) in [(adj, true), (non, false)] {
        for &x in xs {
            if x < WORD {
                system.add(1 << x, side);
            } else {
                highs.push((x, side));
            }
        }
    }
    highs.sort_unstable();
    highs.dedup_by_key(|h| h.0);
    // above[i]: whether some mask satisfies the constraints from highs[i..].
    let mut upper = gf2::System::new();
    let mut above: Vec<bool> = highs
        .iter()
        .rev()
        .map(|&(h, side)| {
            upper.add(h, side);
            upper.is_consistent()
        })
        .collect();
    above.reverse();
    above.push(true);
    let mut pieces = Vec::new();
    let mut lo = WORD;
    for (i, &feasible) in above.iter().enumerate() {
        let hi = highs.get(i).map_or(Vertex::MAX, |h| h.0);
        if hi >= lo.max(from) && feasible {
            match system.solutions() {
                Some(s) => pieces.push((s, lo.max(from), hi)),
                None => break,
            }
        }
        let Some(&(h, side)) = highs.get(i) else { break };
        system.add(rado_row(h), side);
        match h.checked_add(1) {
            Some(next) => lo = next,
            None => break,
        }
    }
    Box::new(lows.chain(pieces.into_iter().flat_map(|(s, lo, hi)| s.between(lo, hi))))
}

fn union_candidates<'a>(l: &'a Node, r: &'a Node, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'a> {
    let half = |xs: &[Vertex], parity: u64| -> Vec<Vertex> {
        xs.iter().filter(|&&x| x % 2 == parity).map(|x| x / 2).collect()
    };
    let side = |node: &'a Node, parity: u64| -> Candidates<'a> {
        let inner_from = from / 2 + u64::from(from % 2 > parity);
        let it = node.candidates(&half(adj, parity), &half(non, parity), inner_from);
        Box::new(it.map_while(move |k| k.checked_mul(2).and_then(|x| x.checked_add(parity))))
    };
    let has_even = adj.iter().any(|x| x % 2 == 0);
    let has_odd = adj.iter().any(|x| x % 2 == 1);
    match (has_even, has_odd) {
        (true, true) => Box::new(std::iter::empty()),
        (true, false) => side(l, 0),
        (false, true) => side(r, 1),
        (false, false) => Box::new(side(l, 0).merge(side(r, 1))),
    }
}

fn probability_threshold(p: f64) -> u64 {
    // p is validated to lie in (0,1); 2^64 * p fits below u64::MAX.
    (p * 18_446_744_073_709_551_616.0) as u64
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stateless 64-bit hash of `(seed, lo, hi)`.
pub(crate) fn pair_hash(seed: u64, lo: u64, hi: u64) -> u64 {
    let a = mix(seed ^ 0x9e37_79b9_7f4a_7c15);
    let b = mix(a.wrapping_add(lo).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    mix(b ^ hi.rotate_left(32) ^ hi)
}

impl Adjacency for CountableGraph {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.node.adjacent(u, v)
    }

    fn candidates(&self, adj: &[Vertex], non: &[Vertex], from: Vertex) -> Candidates<'_> {
        self.node.candidates(adj, non, from)
    }
}
