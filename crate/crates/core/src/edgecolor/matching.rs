//! Maximum matchings in general multigraphs (Edmonds' blossom algorithm) and
//! Tutte-set witnesses when no perfect matching exists.

use std::collections::VecDeque;

use crate::signed::{SignedGraph, VertexId};

const NONE: usize = usize::MAX;

/// Blossom search state over the simple, loopless support of a multigraph.
struct Blossom {
    n: usize,
    adj: Vec<Vec<VertexId>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(g: &SignedGraph, skip: Option<VertexId>) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in g.edges() {
            if e.u != e.v && Some(e.u) != skip && Some(e.v) != skip {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Blossom {
            n,
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn run(mut self, skip: Option<VertexId>) -> Vec<usize> {
        for root in 0..self.n {
            if self.mate[root] != NONE || Some(root) == skip {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
            }
        }
        self.mate
    }
}

/// Mate of every vertex in a maximum matching (`None` when exposed).
pub fn maximum_matching(g: &SignedGraph) -> Vec<Option<VertexId>> {
    Blossom::new(g, None)
        .run(None)
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

fn matching_size(g: &SignedGraph, skip: Option<VertexId>) -> usize {
    Blossom::new(g, skip).run(skip).iter().filter(|&&m| m != NONE).count() / 2
}

/// Edge ids of a perfect matching (the least id among parallel edges), sorted.
pub fn perfect_matching(g: &SignedGraph) -> Option<Vec<usize>> {
    let mate = maximum_matching(g);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    let mut taken = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if e.u != e.v && mate[e.u] == Some(e.v) && !taken[e.u] {
            taken[e.u] = true;
            taken[e.v] = true;
            out.push(id);
        }
    }
    Some(out)
}

/// A set `U` whose removal leaves more than `|U|` odd components, when `g`
/// has no perfect matching. Taken from the Gallai-Edmonds decomposition:
/// `U` is the set of neighbours of the vertices missed by some maximum
/// matching.
pub fn tutte_violator(g: &SignedGraph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let nu = matching_size(g, None);
    if 2 * nu == n {
        return None;
    }
    let d: Vec<bool> = (0..n).map(|v| matching_size(g, Some(v)) == nu).collect();
    let mut u: Vec<VertexId> = (0..n)
        .filter(|&v| !d[v] && g.neighbors(v).iter().any(|&(w, _)| d[w]))
        .collect();
    u.sort_unstable();
    Some(u)
}

/// Number of odd components of `g - removed`.
pub fn odd_components(g: &SignedGraph, removed: &[VertexId]) -> usize {
    let keep: Vec<VertexId> = (0..g.vertex_count()).filter(|v| !removed.contains(v)).collect();
    let (sub, _) = g.induced_subgraph(&keep);
    sub.components().iter().filter(|c| c.len() % 2 == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::Sign;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SignedGraph {
        SignedGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, Sign::Positive))).unwrap()
    }

    fn brute_max(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut best = 0;
        for mask in 0u32..1 << edges.len() {
            let mut used = vec![false; n];
            let mut ok = true;
            let mut size = 0;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if u == v || used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                    size += 1;
                }
            }
            if ok {
                best = best.max(size);
            }
        }
        best
    }

    #[test]
    fn single_edge() {
        assert_eq!(perfect_matching(&graph(2, &[(0, 1)])), Some(vec![0]));
    }

    #[test]
    fn odd_order_has_empty_violator() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(perfect_matching(&g), None);
        assert_eq!(tutte_violator(&g), Some(vec![]));
    }

    #[test]
    fn star_violator() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let u = tutte_violator(&g).unwrap();
        assert_eq!(u, vec![0]);
        assert!(odd_components(&g, &u) > u.len());
    }

    #[test]
    fn blossom_needed() {
        // A 5-cycle with a pendant path forces a blossom contraction.
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (2, 7)]);
        let m = maximum_matching(&g);
        assert!(m.iter().all(Option::is_some));
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..12)) {
            let edges: Vec<(usize, usize)> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
            let g = graph(n, &edges);
            let mate = maximum_matching(&g);
            let size = mate.iter().filter(|m| m.is_some()).count() / 2;
            prop_assert_eq!(size, brute_max(n, &edges));
            for (v, m) in mate.iter().enumerate() {
                if let Some(w) = *m {
                    prop_assert_eq!(mate[w], Some(v));
                    prop_assert!(g.neighbors(v).iter().any(|&(x, _)| x == w));
                }
            }
            match perfect_matching(&g) {
                Some(pm) => prop_assert_eq!(2 * pm.len(), n),
                None => {
                    let u = tutte_violator(&g).unwrap();
                    prop_assert!(odd_components(&g, &u) > u.len());
                }
            }
        }
    }
}
