//! Distances on signed graphs.

use std::collections::VecDeque;

use super::{SignedGraph, VertexId};

/// Shortest positive and negative walk lengths from one source, computed on
/// the signed double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDistances {
    pub plus: Vec<Option<usize>>,
    pub minus: Vec<Option<usize>>,
}

impl SignedDistances {
    pub fn distance(&self, v: VertexId) -> Option<usize> {
        match (self.plus[v], self.minus[v]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Algebraic distance to `v`: the distance signed by a shortest path,
    /// positive when both signs occur at that length.
    pub fn algebraic(&self, v: VertexId) -> Option<i64> {
        let d = self.distance(v)?;
        if self.plus[v] == Some(d) {
            Some(d as i64)
        } else {
            Some(-(d as i64))
        }
    }

    /// Whether shortest paths of both signs reach `v`.
    pub fn is_tie(&self, v: VertexId) -> bool {
        matches!((self.plus[v], self.minus[v]), (Some(a), Some(b)) if a == b)
    }
}

pub fn signed_distances(g: &SignedGraph, source: VertexId) -> SignedDistances {
    let n = g.vertex_count();
    let mut dist: Vec<Option<usize>> = vec![None; 2 * n];
    dist[2 * source] = Some(0);
    let mut queue = VecDeque::from([2 * source]);
    while let Some(st) = queue.pop_front() {
        let (x, neg) = (st / 2, st % 2);
        let d = dist[st].unwrap();
        for &(y, e) in g.neighbors(x) {
            let nst = 2 * y + (neg ^ g.edge(e).sign.is_negative() as usize);
            if dist[nst].is_none() {
                dist[nst] = Some(d + 1);
                queue.push_back(nst);
            }
        }
    }
    SignedDistances {
        plus: (0..n).map(|v| dist[2 * v]).collect(),
        minus: (0..n).map(|v| dist[2 * v + 1]).collect(),
    }
}

/// Unsigned BFS distances from `source`.
pub fn bfs_distances(g: &SignedGraph, source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &(y, _) in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Algebraic distance between `x` and `y`, or `None` when unreachable.
pub fn algebraic_distance(g: &SignedGraph, x: VertexId, y: VertexId) -> Option<i64> {
    signed_distances(g, x).algebraic(y)
}

impl SignedGraph {
    /// Shortest positive walk length between `x` and `y`.
    pub fn d_plus(&self, x: VertexId, y: VertexId) -> Option<usize> {
        signed_distances(self, x).plus[y]
    }

    /// Shortest negative walk length between `x` and `y`.
    pub fn d_minus(&self, x: VertexId, y: VertexId) -> Option<usize> {
        signed_distances(self, x).minus[y]
    }
}
