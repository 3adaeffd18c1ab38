//! Signed edge-weighted graphs, the two-path expansion and wideness tests.
//!
//! A weight `w` on an edge stands for an algebraic distance: its magnitude is
//! a length and its sign the sign of a path of that length. The expansion
//! replaces an edge by two paths of lengths `|w|` and `2k - |w|` with opposite
//! signs, i.e. by a negative `2k`-cycle through both endpoints.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signed::{negative_girth, Sign, SignedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("zero weight is not allowed")]
    Zero,
    #[error("weight {w} outside 1..={k} in magnitude")]
    OutOfRange { w: i64, k: i64 },
    #[error("parameter k must be at least 1, got {0}")]
    BadK(i64),
    #[error("triangle ({a},{b},{c}) has odd weight sum")]
    OddTriangle { a: i64, b: i64, c: i64 },
    #[error("clique is missing the pair {0}-{1}")]
    MissingPair(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Rewrites `-k` to `+k`; both give the same pair of paths.
pub fn canonicalize_weight(w: i64, k: i64) -> Result<i64, WeightError> {
    check_weight(w, k)?;
    Ok(if w == -k { k } else { w })
}

fn check_weight(w: i64, k: i64) -> Result<(), WeightError> {
    if k < 1 {
        return Err(WeightError::BadK(k));
    }
    if w == 0 {
        return Err(WeightError::Zero);
    }
    if w.abs() > k {
        return Err(WeightError::OutOfRange { w, k });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedSignedGraph {
    n: usize,
    edges: Vec<WeightedEdge>,
}

impl WeightedSignedGraph {
    pub fn new(n: usize) -> Self {
        WeightedSignedGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, i64)>,
    ) -> Result<Self, WeightError> {
        let mut h = WeightedSignedGraph::new(n);
        for (u, v, w) in edges {
            h.try_add_edge(u, v, w)?;
        }
        Ok(h)
    }

    pub fn try_add_edge(&mut self, u: VertexId, v: VertexId, w: i64) -> Result<usize, WeightError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(WeightError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if w == 0 {
            return Err(WeightError::Zero);
        }
        self.edges.push(WeightedEdge { u, v, w });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// Checks `1 <= |w| <= k` on every edge.
    pub fn check_range(&self, k: i64) -> Result<(), WeightError> {
        self.edges.iter().try_for_each(|e| check_weight(e.w, k))
    }

    /// Canonical copy and the number of rewritten weights.
    pub fn canonicalized(&self, k: i64) -> Result<(Self, usize), WeightError> {
        let mut out = WeightedSignedGraph::new(self.n);
        let mut rewritten = 0;
        for e in &self.edges {
            let w = canonicalize_weight(e.w, k)?;
            rewritten += usize::from(w != e.w);
            out.edges.push(WeightedEdge { w, ..*e });
        }
        Ok((out, rewritten))
    }
}

/// Whether every cycle has even total weight (weight parities 2-colour the graph).
pub fn is_bipartite_weighted(h: &WeightedSignedGraph) -> bool {
    let n = h.vertex_count();
    let mut adj: Vec<Vec<(VertexId, bool)>> = vec![Vec::new(); n];
    for e in h.edges() {
        let odd = e.w.rem_euclid(2) == 1;
        if e.u == e.v {
            if odd {
                return false;
            }
            continue;
        }
        adj[e.u].push((e.v, odd));
        adj[e.v].push((e.u, odd));
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let sx = side[x].unwrap();
            for &(y, odd) in &adj[x] {
                let want = sx != odd;
                match side[y] {
                    None => {
                        side[y] = Some(want);
                        stack.push(y);
                    }
                    Some(sy) if sy != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Replaces every edge `xy` of weight `w` by an `x-y` path of length `|w|` and
/// sign `sign(w)` and one of length `2k - |w|` and opposite sign. A negative
/// path carries its single negative edge at the `x` end. Original vertices keep
/// their ids; internal vertices are appended edge by edge, shorter path first.
pub fn barbar_expand(h: &WeightedSignedGraph, k: i64) -> Result<SignedGraph, WeightError> {
    h.check_range(k)?;
    let mut g = SignedGraph::new(h.vertex_count());
    for e in h.edges() {
        let len1 = e.w.unsigned_abs() as usize;
        let len2 = (2 * k) as usize - len1;
        let neg1 = e.w < 0;
        for (len, neg) in [(len1, neg1), (len2, !neg1)] {
            let mut prev = e.u;
            for step in 0..len {
                let next = if step + 1 == len { e.v } else { g.add_vertex() };
                let sign = Sign::from_negative(neg && step == 0);
                g.add_edge(prev, next, sign);
                prev = next;
            }
        }
    }
    Ok(g)
}

/// Negative girth of the expansion equals `2k` (it never exceeds `2k`).
pub fn is_2k_wide(h: &WeightedSignedGraph, k: i64) -> Result<bool, WeightError> {
    let g = barbar_expand(h, k)?;
    Ok(negative_girth(&g).is_none_or(|l| l as i64 == 2 * k))
}

/// Closed-form wideness test for a bipartite weighted triangle.
pub fn triangle_is_2k_wide(a: i64, b: i64, c: i64, k: i64) -> Result<bool, WeightError> {
    for w in [a, b, c] {
        check_weight(w, k)?;
    }
    if (a + b + c).rem_euclid(2) != 0 {
        return Err(WeightError::OddTriangle { a, b, c });
    }
    let mut m = [a.abs(), b.abs(), c.abs()];
    m.sort_unstable();
    let negative = (a < 0) ^ (b < 0) ^ (c < 0);
    Ok(if negative {
        m[0] + m[1] + m[2] >= 2 * k
    } else {
        m[0] + m[1] >= m[2]
    })
}

/// Index of the unordered position pair `{i, j}` (i != j) among `s` positions.
pub fn pair_index(i: usize, j: usize, s: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * s - i - 1) / 2 + (j - i - 1)
}

/// A complete weighted graph on labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedClique {
    pub vertices: Vec<VertexId>,
    /// Weight of each position pair, in `pair_index` order.
    pub weights: Vec<i64>,
    pub k: i64,
}

impl WeightedClique {
    pub fn new(vertices: Vec<VertexId>, weights: Vec<i64>, k: i64) -> Self {
        let s = vertices.len();
        assert_eq!(weights.len(), s * s.saturating_sub(1) / 2, "weight count");
        WeightedClique {
            vertices,
            weights,
            k,
        }
    }

    /// Builds the clique on `vertices` from a pair-weight lookup.
    pub fn from_fn(
        vertices: Vec<VertexId>,
        k: i64,
        mut w: impl FnMut(VertexId, VertexId) -> Option<i64>,
    ) -> Result<Self, WeightError> {
        let s = vertices.len();
        let mut weights = Vec::with_capacity(s * s.saturating_sub(1) / 2);
        for i in 0..s {
            for j in i + 1..s {
                let (x, y) = (vertices[i], vertices[j]);
                weights.push(w(x, y).ok_or(WeightError::MissingPair(x, y))?);
            }
        }
        Ok(WeightedClique::new(vertices, weights, k))
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Weight between positions `i` and `j`.
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.weights[pair_index(i, j, self.size())]
    }

    pub fn to_graph(&self) -> WeightedSignedGraph {
        let s = self.size();
        let mut h = WeightedSignedGraph::new(s);
        for i in 0..s {
            for j in i + 1..s {
                h.edges.push(WeightedEdge {
                    u: i,
                    v: j,
                    w: self.weight(i, j),
                });
            }
        }
        h
    }

    pub fn is_bipartite(&self) -> bool {
        let s = self.size();
        (0..s).all(|i| {
            (i + 1..s).all(|j| {
                (j + 1..s).all(|l| {
                    (self.weight(i, j) + self.weight(j, l) + self.weight(i, l)).rem_euclid(2) == 0
                })
            })
        })
    }
}

/// Wideness of a complete bipartite weighted graph, checked triangle by triangle.
pub fn clique_is_2k_wide(c: &WeightedClique) -> Result<bool, WeightError> {
    let s = c.size();
    for i in 0..s {
        for j in i + 1..s {
            for l in j + 1..s {
                let ok = triangle_is_2k_wide(c.weight(i, j), c.weight(j, l), c.weight(i, l), c.k)?;
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{find_isomorphism, named_graph, IsoMode, NamedGraph};
    use proptest::prelude::*;

    fn triangle(a: i64, b: i64, c: i64) -> WeightedSignedGraph {
        WeightedSignedGraph::from_edges(3, [(0, 1, a), (1, 2, b), (0, 2, c)]).unwrap()
    }

    #[test]
    fn canonical_weights() {
        assert_eq!(canonicalize_weight(-2, 2), Ok(2));
        assert_eq!(canonicalize_weight(-1, 2), Ok(-1));
        assert_eq!(canonicalize_weight(3, 3), Ok(3));
        assert!(canonicalize_weight(0, 3).is_err());
        assert!(canonicalize_weight(4, 3).is_err());
    }

    #[test]
    fn weighted_bipartiteness() {
        assert!(is_bipartite_weighted(&triangle(1, 1, 2)));
        assert!(!is_bipartite_weighted(&triangle(1, 2, 2)));
        // {k, k-1} weights with every triangle even.
        let k4 = WeightedClique::new(vec![0, 1, 2, 3], vec![2, 3, 3, 3, 3, 2], 3);
        assert!(k4.is_bipartite());
        assert!(is_bipartite_weighted(&k4.to_graph()));
    }

    #[test]
    fn single_edge_gadgets() {
        let c4 = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        for w in [1, 2, -1] {
            let h = WeightedSignedGraph::from_edges(2, [(0, 1, w)]).unwrap();
            let g = barbar_expand(&h, 2).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
            assert!(find_isomorphism(&g, &c4, IsoMode::UpToSwitching).is_some());
            let d = crate::signed::bfs_distances(&g, 0)[1].unwrap();
            assert_eq!(d as i64, w.abs());
            assert_eq!(crate::signed::algebraic_distance(&g, 0, 1), Some(w));
            assert!(is_2k_wide(&h, 2).unwrap());
        }
    }

    #[test]
    fn triangle_expansion_size() {
        let g = barbar_expand(&triangle(1, 1, 2), 2).unwrap();
        // internal vertices: sum over edges of (|w| - 1) + (2k - |w| - 1)
        assert_eq!(g.vertex_count(), 3 + 2 + 2 + 2);
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn triangle_examples() {
        assert!(triangle_is_2k_wide(1, 1, 2, 2).unwrap());
        assert!(!triangle_is_2k_wide(1, -1, 2, 3).unwrap());
        assert!(triangle_is_2k_wide(2, 2, 2, 2).unwrap());
        assert!(triangle_is_2k_wide(1, 2, 2, 2).is_err());
        assert!(is_2k_wide(&triangle(1, 1, 2), 2).unwrap());
        assert!(!is_2k_wide(&triangle(1, -1, 2), 3).unwrap());
    }

    #[test]
    fn clique_examples() {
        let all2 = WeightedClique::new(vec![0, 1, 2, 3], vec![2; 6], 2);
        assert!(clique_is_2k_wide(&all2).unwrap());
        // positions 0,1,2 carry (1,-1,2) with k = 3
        let bad = WeightedClique::new(vec![0, 1, 2, 3], vec![1, 2, 3, -1, 2, 3], 3);
        assert!(!clique_is_2k_wide(&bad).unwrap());
        let tri = WeightedClique::new(vec![0, 1, 2], vec![1, 2, 1], 2);
        assert_eq!(
            clique_is_2k_wide(&tri).unwrap(),
            triangle_is_2k_wide(1, 1, 2, 2).unwrap()
        );
    }

    #[test]
    fn pair_index_is_dense() {
        for s in 2..7 {
            let mut seen = Vec::new();
            for i in 0..s {
                for j in i + 1..s {
                    seen.push(pair_index(i, j, s));
                    assert_eq!(pair_index(i, j, s), pair_index(j, i, s));
                }
            }
            assert_eq!(seen, (0..s * (s - 1) / 2).collect::<Vec<_>>());
        }
    }

    fn weight_strategy(k: i64) -> impl Strategy<Value = i64> {
        (1..=k, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m })
    }

    proptest! {
        #[test]
        fn canonical_magnitude_k_does_not_change_verdict(
            (k, a, b) in (1i64..6).prop_flat_map(|k| (Just(k), weight_strategy(k), weight_strategy(k))),
        ) {
            // Flip the parity of b when needed so that a + b + k is even.
            let b = if (a + b + k).rem_euclid(2) == 0 {
                b
            } else if b.abs() < k {
                b + b.signum()
            } else {
                b - b.signum()
            };
            prop_assume!(b != 0);
            prop_assert_eq!(
                triangle_is_2k_wide(a, b, k, k).unwrap(),
                triangle_is_2k_wide(a, b, -k, k).unwrap()
            );
        }

        #[test]
        fn switching_commutes_with_expansion(
            k in 1i64..4,
            n in 2usize..6,
            raw in prop::collection::vec((0usize..6, 0usize..6, 1i64..4, any::<bool>()), 1..8),
            flips in prop::collection::vec(any::<bool>(), 6),
        ) {
            let es: Vec<_> = raw
                .into_iter()
                .filter(|&(u, v, m, _)| u < n && v < n && u != v && m <= k)
                .map(|(u, v, m, neg)| (u, v, if neg { -m } else { m }))
                .collect();
            let h = WeightedSignedGraph::from_edges(n, es.iter().copied()).unwrap();
            let switched = WeightedSignedGraph::from_edges(
                n,
                es.iter().map(|&(u, v, w)| (u, v, if flips[u] != flips[v] { -w } else { w })),
            )
            .unwrap();
            let g1 = barbar_expand(&h, k).unwrap();
            let g2 = barbar_expand(&switched, k).unwrap();
            prop_assert_eq!(negative_girth(&g1), negative_girth(&g2));
            if is_bipartite_weighted(&h) {
                prop_assert!(g1.is_bipartite());
            }
        }

        #[test]
        fn cliques_agree_with_expansion(
            k in 1i64..5,
            size in 3usize..6,
            parity in prop::collection::vec(any::<bool>(), 5),
            picks in prop::collection::vec((0usize..8, any::<bool>()), 10),
        ) {
            let mut weights = Vec::new();
            let mut feasible = true;
            for i in 0..size {
                for j in i + 1..size {
                    let odd = parity[i] != parity[j];
                    let options: Vec<i64> = (1..=k).filter(|m| (m % 2 == 1) == odd).collect();
                    if options.is_empty() {
                        feasible = false;
                        break;
                    }
                    let (r, neg) = picks[weights.len()];
                    let m = options[r % options.len()];
                    weights.push(canonicalize_weight(if neg { -m } else { m }, k).unwrap());
                }
            }
            if feasible {
                let c = WeightedClique::new((0..size).collect(), weights, k);
                prop_assert!(c.is_bipartite());
                prop_assert_eq!(clique_is_2k_wide(&c).unwrap(), is_2k_wide(&c.to_graph(), k).unwrap());
            }
        }
    }
}
