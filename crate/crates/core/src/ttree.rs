//! Partial t-tree recognition, t-tree completion and distance weights.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signed::{negative_girth, signed_distances, Sign, SignedGraph, VertexId};
use crate::weighted::{canonicalize_weight, WeightedSignedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("t must be at least 1")]
    BadT,
    #[error("graph has a loop at vertex {0}")]
    Loop(VertexId),
    #[error("invalid clique sequence: {0}")]
    InvalidSequence(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("negative girth {girth} is below {needed}")]
    GirthTooSmall { girth: usize, needed: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("k must be at least 2 for distance weights, got {0}")]
    BadK(i64),
}

/// Insertion order of a t-tree completion: the first `min(t+1, n)` vertices
/// form the seed clique, every later vertex is joined to the t-clique
/// `attach[i - seed_len]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSequence {
    pub t: usize,
    pub order: Vec<VertexId>,
    pub attach: Vec<Vec<VertexId>>,
}

impl CliqueSequence {
    pub fn seed_len(&self) -> usize {
        self.order.len().min(self.t + 1)
    }

    pub fn seed(&self) -> &[VertexId] {
        &self.order[..self.seed_len()]
    }

    /// The (t+1)-cliques of the completion in insertion order.
    pub fn cliques(&self) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        if self.seed_len() == self.t + 1 {
            out.push(self.seed().to_vec());
        }
        for (i, a) in self.attach.iter().enumerate() {
            let mut c = a.clone();
            c.push(self.order[self.seed_len() + i]);
            out.push(c);
        }
        out
    }
}

type Bits = Vec<u64>;

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn put(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in b.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

struct Eliminator {
    t: usize,
    failed: HashSet<Bits>,
}

impl Eliminator {
    /// Eliminates all vertices of `alive`; returns (vertex, later neighbours)
    /// in elimination order.
    fn run(&mut self, adj: &[Bits], alive: &Bits) -> Option<Vec<(VertexId, Vec<VertexId>)>> {
        let live = members(alive);
        if live.len() <= self.t + 1 {
            return Some(
                live.iter()
                    .map(|&v| (v, members(&adj[v]).into_iter().filter(|&w| has(alive, w)).collect()))
                    .collect(),
            );
        }
        if self.failed.contains(alive) {
            return None;
        }
        let nbrs: Vec<(VertexId, Vec<VertexId>)> = live
            .iter()
            .map(|&v| (v, members(&adj[v]).into_iter().filter(|&w| has(alive, w)).collect()))
            .collect();
        // A simplicial or almost simplicial vertex of degree <= t can always be
        // eliminated first without losing a solution.
        let safe = nbrs.iter().find(|(_, nb)| {
            nb.len() <= self.t && (non_adjacent_pairs(adj, nb) == 0 || almost_simplicial(adj, nb))
        });
        let mut candidates: Vec<&(VertexId, Vec<VertexId>)> = match safe {
            Some(c) => vec![c],
            None => nbrs.iter().filter(|(_, nb)| nb.len() <= self.t).collect(),
        };
        candidates.sort_by_key(|(v, nb)| (nb.len(), *v));
        for (v, nb) in candidates {
            let mut adj2 = adj.to_vec();
            for &a in nb {
                for &b in nb {
                    if a != b {
                        put(&mut adj2[a], b);
                    }
                }
            }
            let mut alive2 = alive.clone();
            alive2[v / 64] &= !(1 << (v % 64));
            if let Some(mut rest) = self.run(&adj2, &alive2) {
                rest.insert(0, (*v, nb.clone()));
                return Some(rest);
            }
            if safe.is_some() {
                break;
            }
        }
        self.failed.insert(alive.clone());
        None
    }
}

fn non_adjacent_pairs(adj: &[Bits], nb: &[VertexId]) -> usize {
    let mut count = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !has(&adj[a], b) {
                count += 1;
            }
        }
    }
    count
}

// Some neighbour is adjacent to nothing missing: all non-edges touch it.
fn almost_simplicial(adj: &[Bits], nb: &[VertexId]) -> bool {
    nb.iter().any(|&x| {
        let rest: Vec<VertexId> = nb.iter().copied().filter(|&y| y != x).collect();
        non_adjacent_pairs(adj, &rest) == 0
    })
}

/// Finds a t-tree completion of the underlying simple graph of `g`, or `None`
/// when its treewidth exceeds `t`. Parallel edges are merged and signs ignored.
pub fn recognize_partial_ttree(g: &SignedGraph, t: usize) -> Result<Option<CliqueSequence>, TreeError> {
    if t < 1 {
        return Err(TreeError::BadT);
    }
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(TreeError::Loop(e.u));
    }
    let n = g.vertex_count();
    let words = n.div_ceil(64).max(1);
    let mut adj: Vec<Bits> = vec![vec![0; words]; n];
    for e in g.edges() {
        put(&mut adj[e.u], e.v);
        put(&mut adj[e.v], e.u);
    }
    let mut alive = vec![0u64; words];
    for v in 0..n {
        put(&mut alive, v);
    }
    let mut elim = Eliminator {
        t,
        failed: HashSet::new(),
    };
    let Some(steps) = elim.run(&adj, &alive) else {
        return Ok(None);
    };
    Ok(Some(sequence_from_elimination(n, t, &steps)))
}

fn sequence_from_elimination(n: usize, t: usize, steps: &[(VertexId, Vec<VertexId>)]) -> CliqueSequence {
    let seed_len = n.min(t + 1);
    let order: Vec<VertexId> = steps.iter().rev().map(|&(v, _)| v).collect();
    let mut cliques: Vec<Vec<VertexId>> = Vec::new();
    if seed_len == t + 1 {
        cliques.push(order[..seed_len].to_vec());
    }
    let mut attach = Vec::new();
    for &(v, ref nb) in steps.iter().rev().skip(seed_len) {
        let host = cliques
            .iter()
            .find(|c| nb.iter().all(|x| c.contains(x)))
            .expect("eliminated neighbourhood lies in an earlier clique");
        let mut a = nb.clone();
        for &x in host {
            if a.len() == t {
                break;
            }
            if !a.contains(&x) {
                a.push(x);
            }
        }
        a.sort_unstable();
        let mut c = a.clone();
        c.push(v);
        cliques.push(c);
        attach.push(a);
    }
    CliqueSequence { t, order, attach }
}

/// Edges `(u, v)`, `u < v`, of the completion described by `seq`, after
/// checking that `seq` is a valid completion of `g`.
pub fn completion_edges(g: &SignedGraph, seq: &CliqueSequence) -> Result<Vec<(VertexId, VertexId)>, TreeError> {
    let n = g.vertex_count();
    let bad = |m: String| Err(TreeError::InvalidSequence(m));
    if seq.t < 1 {
        return Err(TreeError::BadT);
    }
    let mut pos = vec![usize::MAX; n];
    if seq.order.len() != n {
        return bad(format!("order lists {} of {n} vertices", seq.order.len()));
    }
    for (i, &v) in seq.order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return bad(format!("order is not a permutation (entry {v})"));
        }
        pos[v] = i;
    }
    let seed_len = seq.seed_len();
    if seq.attach.len() != n - seed_len {
        return bad(format!("expected {} attachment sets, got {}", n - seed_len, seq.attach.len()));
    }
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut link = |a: VertexId, b: VertexId, adj: &mut Vec<Vec<bool>>| {
        if !adj[a][b] {
            adj[a][b] = true;
            adj[b][a] = true;
            edges.push((a.min(b), a.max(b)));
        }
    };
    for i in 0..seed_len {
        for j in i + 1..seed_len {
            link(seq.order[i], seq.order[j], &mut adj);
        }
    }
    for (i, a) in seq.attach.iter().enumerate() {
        let v = seq.order[seed_len + i];
        let mut sorted = a.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seq.t || a.len() != seq.t {
            return bad(format!("attachment of {v} does not have {} distinct vertices", seq.t));
        }
        if a.iter().any(|&x| x >= n || pos[x] >= pos[v]) {
            return bad(format!("attachment of {v} uses a later vertex"));
        }
        for (p, &x) in a.iter().enumerate() {
            for &y in &a[p + 1..] {
                if !adj[x][y] {
                    return bad(format!("attachment of {v} is not a clique"));
                }
            }
        }
        for &x in a {
            link(x, v, &mut adj);
        }
    }
    for e in g.edges() {
        if e.is_loop() {
            return Err(TreeError::Loop(e.u));
        }
        if !adj[e.u][e.v] {
            return bad(format!("edge {}-{} missing from completion", e.u, e.v));
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

/// The t-tree completion as an all-positive graph with sorted edges.
pub fn complete_to_ttree(g: &SignedGraph, seq: &CliqueSequence) -> Result<SignedGraph, TreeError> {
    let edges = completion_edges(g, seq)?;
    Ok(SignedGraph::from_edges(g.vertex_count(), edges.into_iter().map(|(u, v)| (u, v, Sign::Positive)))
        .expect("completion edges in range"))
}

/// Weights the completion edges by algebraic distance in `g` up to `k`, and
/// by `k` or `k-1` (whichever matches the parity of the distance) beyond.
pub fn completion_weights(g: &SignedGraph, seq: &CliqueSequence, k: i64) -> Result<WeightedSignedGraph, TreeError> {
    if k < 2 {
        return Err(TreeError::BadK(k));
    }
    if !g.is_bipartite() {
        return Err(TreeError::NotBipartite);
    }
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    if let Some(girth) = negative_girth(g) {
        if (girth as i64) < 2 * k {
            return Err(TreeError::GirthTooSmall {
                girth,
                needed: 2 * k as usize,
            });
        }
    }
    let edges = completion_edges(g, seq)?;
    let n = g.vertex_count();
    let mut cache: Vec<Option<crate::signed::SignedDistances>> = vec![None; n];
    let mut h = WeightedSignedGraph::new(n);
    for (u, v) in edges {
        let dist = cache[u].get_or_insert_with(|| signed_distances(g, u));
        let d = dist.distance(v).expect("connected") as i64;
        let w = if d <= k {
            assert!(
                d == k || !dist.is_tie(v),
                "shortest paths of both signs at distance {d} < k between {u} and {v}"
            );
            dist.algebraic(v).unwrap()
        } else if (d - k) % 2 == 0 {
            k
        } else {
            k - 1
        };
        let w = canonicalize_weight(w, k).expect("weight within range");
        h.try_add_edge(u, v, w).expect("valid edge");
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{named_graph, NamedGraph};
    use crate::weighted::{clique_is_2k_wide, is_bipartite_weighted, WeightedClique};

    fn plain(n: usize, es: &[(usize, usize)]) -> SignedGraph {
        SignedGraph::from_edges(n, es.iter().map(|&(u, v)| (u, v, Sign::Positive))).unwrap()
    }

    fn check_width(g: &SignedGraph, seq: &CliqueSequence) {
        let h = complete_to_ttree(g, seq).unwrap();
        let n = g.vertex_count();
        let t = seq.t;
        if n > t {
            assert_eq!(h.edge_count(), t * (t + 1) / 2 + (n - t - 1) * t);
        }
    }

    #[test]
    fn trees_are_partial_1_trees() {
        let g = plain(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let seq = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        check_width(&g, &seq);
        assert_eq!(complete_to_ttree(&g, &seq).unwrap().edge_count(), 5);
    }

    #[test]
    fn forbidden_minors_are_rejected_at_three() {
        for name in NamedGraph::treewidth3_obstructions() {
            let g = named_graph(&name).unwrap();
            assert!(recognize_partial_ttree(&g, 3).unwrap().is_none(), "{name:?}");
            let seq = recognize_partial_ttree(&g, 4).unwrap().expect("width 4");
            check_width(&g, &seq);
        }
    }

    #[test]
    fn cube_is_a_partial_3_tree() {
        let mut es = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    es.push((u, v));
                }
            }
        }
        let g = plain(8, &es);
        let seq = recognize_partial_ttree(&g, 3).unwrap().unwrap();
        check_width(&g, &seq);
        assert!(recognize_partial_ttree(&g, 2).unwrap().is_none());
    }

    #[test]
    fn four_cycle_completion_has_one_chord() {
        let g = plain(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let seq = recognize_partial_ttree(&g, 2).unwrap().unwrap();
        assert_eq!(complete_to_ttree(&g, &seq).unwrap().edge_count(), 5);
        assert!(recognize_partial_ttree(&g, 1).unwrap().is_none());
    }

    #[test]
    fn small_graphs_and_errors() {
        let g = plain(2, &[(0, 1)]);
        let seq = recognize_partial_ttree(&g, 3).unwrap().unwrap();
        assert_eq!(seq.seed_len(), 2);
        assert!(seq.attach.is_empty());
        assert_eq!(recognize_partial_ttree(&g, 0), Err(TreeError::BadT));
        let l = SignedGraph::from_edges(1, [(0, 0, Sign::Positive)]).unwrap();
        assert_eq!(recognize_partial_ttree(&l, 1), Err(TreeError::Loop(0)));
        let bad = CliqueSequence {
            t: 1,
            order: vec![0, 1],
            attach: vec![],
        };
        let p3 = plain(3, &[(0, 1), (1, 2)]);
        assert!(matches!(complete_to_ttree(&p3, &bad), Err(TreeError::InvalidSequence(_))));
    }

    #[test]
    fn completion_weights_on_negative_six_cycle() {
        let g = named_graph(&NamedGraph::NegativeCycle(6)).unwrap();
        let seq = CliqueSequence {
            t: 2,
            order: vec![0, 2, 3, 1, 4, 5],
            attach: vec![vec![0, 2], vec![0, 3], vec![0, 4]],
        };
        let h = completion_weights(&g, &seq, 3).unwrap();
        let w = |u: usize, v: usize| {
            h.edges()
                .iter()
                .find(|e| (e.u, e.v) == (u.min(v), u.max(v)))
                .map(|e| e.w)
                .unwrap()
        };
        assert_eq!(w(0, 2), 2);
        assert_eq!(w(0, 3), 3);
        assert_eq!(w(0, 1), 1);
        assert_eq!(w(0, 5), -1);
        assert_eq!(w(0, 4), -2);
        assert!(is_bipartite_weighted(&h));
    }

    #[test]
    fn completion_weights_far_pairs_use_parity() {
        // Path of length 3 with k = 2: the ends are at distance 3 > k, odd,
        // matching k - 1 = 1.
        let g = plain(4, &[(0, 1), (1, 2), (2, 3)]);
        let seq = CliqueSequence {
            t: 2,
            order: vec![0, 3, 1, 2],
            attach: vec![vec![1, 3]],
        };
        let h = completion_weights(&g, &seq, 2).unwrap();
        let far = h.edges().iter().find(|e| (e.u, e.v) == (0, 3)).unwrap();
        assert_eq!(far.w, 1);
        let seq4 = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        assert!(completion_weights(&g, &seq4, 1).is_err());
    }

    #[test]
    fn completion_weights_preconditions() {
        let c4 = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let seq = recognize_partial_ttree(&c4, 2).unwrap().unwrap();
        assert_eq!(
            completion_weights(&c4, &seq, 3),
            Err(TreeError::GirthTooSmall { girth: 4, needed: 6 })
        );
        let tri = named_graph(&NamedGraph::NegativeCycle(3)).unwrap();
        let seq = recognize_partial_ttree(&tri, 2).unwrap().unwrap();
        assert_eq!(completion_weights(&tri, &seq, 2), Err(TreeError::NotBipartite));
        let h = completion_weights(&c4, &recognize_partial_ttree(&c4, 2).unwrap().unwrap(), 2).unwrap();
        for c in recognize_partial_ttree(&c4, 2).unwrap().unwrap().cliques() {
            let wc = WeightedClique::from_fn(c, 2, |x, y| {
                h.edges()
                    .iter()
                    .find(|e| (e.u, e.v) == (x.min(y), x.max(y)))
                    .map(|e| e.w)
            })
            .unwrap();
            assert!(clique_is_2k_wide(&wc).unwrap());
        }
    }

    fn random_partial_ttree(t: usize, n: usize, choices: &[(usize, bool)]) -> SignedGraph {
        // Grow a t-tree by attaching each vertex to a t-subset of an existing
        // (t+1)-clique, keeping each edge according to `choices`.
        let mut cliques: Vec<Vec<usize>> = vec![(0..=t).collect()];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..=t {
            for j in i + 1..=t {
                edges.push((i, j));
            }
        }
        for v in t + 1..n {
            let (pick, _) = choices[v % choices.len()];
            let host = cliques[pick % cliques.len()].clone();
            let drop = host[pick % (t + 1)];
            let attach: Vec<usize> = host.into_iter().filter(|&x| x != drop).collect();
            for &a in &attach {
                edges.push((a, v));
            }
            let mut c = attach;
            c.push(v);
            cliques.push(c);
        }
        let kept = edges
            .into_iter()
            .enumerate()
            .filter(|(i, _)| choices[i % choices.len()].1)
            .map(|(_, e)| e);
        plain_graph(n, kept)
    }

    fn plain_graph(n: usize, es: impl Iterator<Item = (usize, usize)>) -> SignedGraph {
        SignedGraph::from_edges(n, es.map(|(u, v)| (u, v, Sign::Positive))).unwrap()
    }

    proptest::proptest! {
        #[test]
        fn random_partial_ttrees_are_recognized(
            t in 1usize..4,
            n in 1usize..16,
            choices in proptest::collection::vec((0usize..100, proptest::bool::weighted(0.7)), 1..60),
        ) {
            let n = n.max(t + 1);
            let g = random_partial_ttree(t, n, &choices);
            let seq = recognize_partial_ttree(&g, t).unwrap().expect("width at most t");
            let edges = completion_edges(&g, &seq).unwrap();
            proptest::prop_assert_eq!(edges.len(), t * (t + 1) / 2 + (n - t - 1) * t);
            for c in seq.cliques() {
                for (i, &a) in c.iter().enumerate() {
                    for &b in &c[i + 1..] {
                        proptest::prop_assert!(edges.contains(&(a.min(b), a.max(b))));
                    }
                }
            }
        }
    }
}
