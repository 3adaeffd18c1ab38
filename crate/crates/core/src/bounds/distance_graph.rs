//! Distance graphs: pairs lying on a common negative 2k-cycle, weighted by
//! algebraic distance.

use crate::signed::{cycles_of_length, negative_girth, signed_distances, Sign, SignedGraph, VertexId};
use crate::weighted::{canonicalize_weight, WeightedSignedGraph};

use super::BoundError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceGraph {
    base: SignedGraph,
    k: i64,
    n: usize,
    // n * n matrix; 0 marks a non-edge.
    w: Vec<i64>,
}

impl DistanceGraph {
    /// Builds a distance graph from explicit weights; `w(x, y)` returns `None`
    /// for non-adjacent pairs. Weights are canonicalised.
    pub fn from_fn(
        base: SignedGraph,
        k: i64,
        mut w: impl FnMut(VertexId, VertexId) -> Option<i64>,
    ) -> Result<Self, BoundError> {
        let n = base.vertex_count();
        let mut m = vec![0; n * n];
        for x in 0..n {
            for y in x + 1..n {
                if let Some(val) = w(x, y) {
                    let c = canonicalize_weight(val, k)?;
                    m[x * n + y] = c;
                    m[y * n + x] = c;
                }
            }
        }
        Ok(DistanceGraph { base, k, n, w: m })
    }

    pub fn base(&self) -> &SignedGraph {
        &self.base
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, x: VertexId, y: VertexId) -> Option<i64> {
        match self.w[x * self.n + y] {
            0 => None,
            v => Some(v),
        }
    }

    pub fn neighbors(&self, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&y| self.w[x * self.n + y] != 0)
    }

    pub fn edge_count(&self) -> usize {
        self.w.iter().filter(|&&v| v != 0).count() / 2
    }

    pub fn to_weighted_graph(&self) -> WeightedSignedGraph {
        let mut h = WeightedSignedGraph::new(self.n);
        for x in 0..self.n {
            for y in x + 1..self.n {
                if let Some(v) = self.weight(x, y) {
                    h.try_add_edge(x, y, v).expect("nonzero weight");
                }
            }
        }
        h
    }
}

/// Checks that `b` is bipartite with negative girth exactly `2k`.
pub fn check_target(b: &SignedGraph, k: i64) -> Result<(), BoundError> {
    if k < 1 {
        return Err(BoundError::BadParams(format!("k must be positive, got {k}")));
    }
    if !b.is_bipartite() {
        return Err(BoundError::TargetNotBipartite);
    }
    let g = negative_girth(b);
    if g != Some(2 * k as usize) {
        return Err(BoundError::TargetGirth {
            found: g,
            expected: 2 * k as usize,
        });
    }
    Ok(())
}

/// Joins every pair of vertices lying on a common negative `2k`-cycle of `b`,
/// weighted by their algebraic distance in `b`.
pub fn build_distance_graph(b: &SignedGraph, k: i64) -> Result<DistanceGraph, BoundError> {
    check_target(b, k)?;
    let n = b.vertex_count();
    let mut on_cycle = vec![false; n * n];
    cycles_of_length(b, 2 * k as usize, |c| {
        if c.sign == Sign::Negative {
            for &x in &c.vertices {
                for &y in &c.vertices {
                    on_cycle[x * n + y] = true;
                }
            }
        }
        true
    });
    let dists: Vec<_> = (0..n).map(|x| signed_distances(b, x)).collect();
    DistanceGraph::from_fn(b.clone(), k, |x, y| {
        on_cycle[x * n + y].then(|| dists[x].algebraic(y).expect("same cycle, reachable"))
    })
}
