//! Signed multigraphs, switchings and vertex maps.
//!
//! A signed graph is a multigraph (loops and parallel edges allowed) with a
//! sign on every edge. Edge ids are dense and equal to the insertion index.

mod cycles;
mod distance;
mod hom;
mod named;

pub use cycles::{
    contains_ok_element, cycles_of_length, negative_girth, shortest_cycle, Cycle, Parity,
};
pub use distance::{algebraic_distance, bfs_distances, signed_distances, SignedDistances};
pub use hom::{find_homomorphism, find_isomorphism, image_graph, verify_homomorphism, IsoMode};
pub use named::{named_graph, NamedGraph};

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("switching has {found} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("underlying multigraphs differ: {0}")]
    DifferentUnderlying(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("invalid parameters for {name}: {reason}")]
    InvalidParams { name: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_negative(neg: bool) -> Self {
        if neg {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn flipped(self) -> Self {
        Sign::from_negative(!self.is_negative())
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    /// Bit used in sign masks: positive = 1, negative = 2.
    pub(crate) fn mask(self) -> u8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => 2,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl SignedEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<SignedEdge>,
    // (neighbour, edge id); a loop is listed once at its vertex.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Sign)>,
    ) -> Result<Self, GraphError> {
        let mut g = SignedGraph::new(n);
        for (u, v, s) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            g.add_edge(u, v, s);
        }
        Ok(g)
    }

    /// Adds an edge and returns its id. Panics if an endpoint is out of range.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, sign: Sign) -> EdgeId {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        let id = self.edges.len();
        self.edges.push(SignedEdge { u, v, sign });
        self.adj[u].push((v, id));
        if u != v {
            self.adj[v].push((u, id));
        }
        id
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &SignedEdge {
        &self.edges[e]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    /// Degree counting a loop twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v]
            .iter()
            .map(|&(w, _)| if w == v { 2 } else { 1 })
            .sum()
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// Bit mask of the signs present on edges between `u` and `v` (1 = +, 2 = -).
    pub fn sign_mask(&self, u: VertexId, v: VertexId) -> u8 {
        self.adj[u]
            .iter()
            .filter(|&&(w, _)| w == v)
            .fold(0, |m, &(_, e)| m | self.edges[e].sign.mask())
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(SignedEdge::is_loop)
    }

    /// Same multigraph with every sign replaced.
    pub fn with_signs(&self, signs: impl Fn(EdgeId, &SignedEdge) -> Sign) -> SignedGraph {
        let mut g = SignedGraph::new(self.n);
        for (id, e) in self.edges.iter().enumerate() {
            g.add_edge(e.u, e.v, signs(id, e));
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-colouring of the underlying graph, if it is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &(y, _) in &self.adj[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Induced subgraph on `vertices` (renumbered in the given order) and the
    /// original id of every kept edge.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> (SignedGraph, Vec<EdgeId>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SignedGraph::new(vertices.len());
        let mut kept = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if index[e.u] != usize::MAX && index[e.v] != usize::MAX {
                g.add_edge(index[e.u], index[e.v], e.sign);
                kept.push(id);
            }
        }
        (g, kept)
    }

    /// Whether `other` has the same vertex count and the same endpoints edge by edge.
    pub fn same_underlying(&self, other: &SignedGraph) -> Result<(), GraphError> {
        if self.n != other.n {
            return Err(GraphError::DifferentUnderlying(format!(
                "{} vs {} vertices",
                self.n, other.n
            )));
        }
        if self.edges.len() != other.edges.len() {
            return Err(GraphError::DifferentUnderlying(format!(
                "{} vs {} edges",
                self.edges.len(),
                other.edges.len()
            )));
        }
        for (id, (a, b)) in self.edges.iter().zip(&other.edges).enumerate() {
            let same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
            if !same {
                return Err(GraphError::DifferentUnderlying(format!(
                    "edge {id} joins {}-{} vs {}-{}",
                    a.u, a.v, b.u, b.v
                )));
            }
        }
        Ok(())
    }
}

/// A set of switched vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Switching(pub Vec<bool>);

impl Switching {
    pub fn identity(n: usize) -> Self {
        Switching(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    pub fn sign_at(&self, v: VertexId) -> Sign {
        Sign::from_negative(self.0[v])
    }
}

/// A vertex map together with the switching of the source that makes it
/// edge-sign preserving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub image: Vec<VertexId>,
    pub switching: Switching,
}

/// Switches `g` at every vertex flagged in `s`. Loops keep their sign.
pub fn switch_at(g: &SignedGraph, s: &Switching) -> Result<SignedGraph, GraphError> {
    if s.len() != g.vertex_count() {
        return Err(GraphError::SizeMismatch {
            expected: g.vertex_count(),
            found: s.len(),
        });
    }
    Ok(g.with_signs(|_, e| e.sign * s.sign_at(e.u) * s.sign_at(e.v)))
}

/// Finds a switching `S` with `switch_at(g2, S) == g1`, if any.
///
/// Propagates along a spanning forest of the product signature and checks the
/// remaining edges.
pub fn is_switching_equivalent(
    g1: &SignedGraph,
    g2: &SignedGraph,
) -> Result<Option<Switching>, GraphError> {
    g1.same_underlying(g2)?;
    let n = g1.vertex_count();
    let product: Vec<Sign> = g1
        .edges()
        .iter()
        .zip(g2.edges())
        .map(|(a, b)| a.sign * b.sign)
        .collect();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if flip[s].is_some() {
            continue;
        }
        flip[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let fx = flip[x].unwrap();
            for &(y, e) in g1.neighbors(x) {
                let want = fx != product[e].is_negative();
                if x == y {
                    if product[e].is_negative() {
                        return Ok(None);
                    }
                    continue;
                }
                match flip[y] {
                    None => {
                        flip[y] = Some(want);
                        queue.push_back(y);
                    }
                    Some(fy) if fy != want => return Ok(None),
                    _ => {}
                }
            }
        }
    }
    Ok(Some(Switching(flip.into_iter().map(Option::unwrap).collect())))
}
