//! Cycles, girths and the O_k cycle class.

use std::collections::VecDeque;

use super::{EdgeId, Sign, SignedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn admits(self, len: usize) -> bool {
        match self {
            Parity::Even => len.is_multiple_of(2),
            Parity::Odd => len % 2 == 1,
            Parity::Any => true,
        }
    }
}

/// A cycle: `vertices[i]` and `vertices[i+1]` (cyclically) are joined by `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub sign: Sign,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether this cycle fails to map to a negative cycle of length `k`.
    pub fn is_ok_element(&self, k: usize) -> bool {
        let len = self.len();
        match self.sign {
            Sign::Positive => len % 2 == 1,
            Sign::Negative => len < k || len % 2 != k % 2,
        }
    }

    /// Checks that the cycle is a genuine cycle of `g` with the recorded sign.
    pub fn is_valid_in(&self, g: &SignedGraph) -> bool {
        let l = self.len();
        if l == 0 || self.vertices.len() != l {
            return false;
        }
        let mut seen_v = self.vertices.clone();
        seen_v.sort_unstable();
        seen_v.dedup();
        let mut seen_e = self.edges.clone();
        seen_e.sort_unstable();
        seen_e.dedup();
        if seen_v.len() != l || seen_e.len() != l {
            return false;
        }
        let mut sign = Sign::Positive;
        for i in 0..l {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % l]);
            let Some(e) = g.edges().get(self.edges[i]) else {
                return false;
            };
            if !((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
                return false;
            }
            sign = sign * e.sign;
        }
        sign == self.sign
    }
}

/// Visits every cycle of `g` with exactly `len` edges, once per cycle.
/// The visitor returns `false` to stop early; the function returns `false` if stopped.
pub fn cycles_of_length(
    g: &SignedGraph,
    len: usize,
    mut visit: impl FnMut(&Cycle) -> bool,
) -> bool {
    if len == 0 {
        return true;
    }
    if len == 1 {
        for (id, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                let c = Cycle {
                    vertices: vec![e.u],
                    edges: vec![id],
                    sign: e.sign,
                };
                if !visit(&c) {
                    return false;
                }
            }
        }
        return true;
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut verts = Vec::with_capacity(len);
    let mut edges = Vec::with_capacity(len);
    for s in 0..n {
        on_path[s] = true;
        verts.push(s);
        let go = extend(g, s, len, &mut on_path, &mut verts, &mut edges, Sign::Positive, &mut visit);
        verts.pop();
        on_path[s] = false;
        if !go {
            return false;
        }
    }
    true
}

// Depth-first extension of a path starting at `s` whose other vertices are all > s.
#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SignedGraph,
    s: VertexId,
    len: usize,
    on_path: &mut [bool],
    verts: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    sign: Sign,
    visit: &mut impl FnMut(&Cycle) -> bool,
) -> bool {
    let x = *verts.last().unwrap();
    if verts.len() == len {
        // Close back to s, avoiding each direction being reported twice.
        for &(y, e) in g.neighbors(x) {
            if y != s || x == s {
                continue;
            }
            let canonical = if len == 2 {
                e > edges[0]
            } else {
                verts[1] < verts[len - 1]
            };
            if !canonical {
                continue;
            }
            edges.push(e);
            let c = Cycle {
                vertices: verts.clone(),
                edges: edges.clone(),
                sign: sign * g.edge(e).sign,
            };
            edges.pop();
            if !visit(&c) {
                return false;
            }
        }
        return true;
    }
    for &(y, e) in g.neighbors(x) {
        if y <= s || on_path[y] {
            continue;
        }
        on_path[y] = true;
        verts.push(y);
        edges.push(e);
        let go = extend(g, s, len, on_path, verts, edges, sign * g.edge(e).sign, visit);
        edges.pop();
        verts.pop();
        on_path[y] = false;
        if !go {
            return false;
        }
    }
    true
}

/// A closed walk as the sequence of traversed edges starting from `start`.
struct ClosedWalk {
    start: VertexId,
    edges: Vec<EdgeId>,
}

/// Shortest closed walks from `s` for every (sign, parity) class, found by BFS
/// on the fourfold cover `V x {+,-} x {even,odd}`. Index: sign bit * 2 + parity bit.
fn closed_walks_from(g: &SignedGraph, s: VertexId) -> [Option<ClosedWalk>; 4] {
    let n = g.vertex_count();
    let state = |v: VertexId, neg: bool, odd: bool| v * 4 + (neg as usize) * 2 + odd as usize;
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; 4 * n];
    let mut seen = vec![false; 4 * n];
    let start = state(s, false, false);
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(st) = queue.pop_front() {
        let (x, neg, odd) = (st / 4, st & 2 != 0, st & 1 != 0);
        for &(y, e) in g.neighbors(x) {
            let nneg = neg != g.edge(e).sign.is_negative();
            let nst = state(y, nneg, !odd);
            if !seen[nst] {
                seen[nst] = true;
                parent[nst] = Some((st, e));
                queue.push_back(nst);
            }
        }
    }
    let trace = |mut st: usize| -> ClosedWalk {
        let mut edges = Vec::new();
        while let Some((p, e)) = parent[st] {
            edges.push(e);
            st = p;
        }
        edges.reverse();
        ClosedWalk { start: s, edges }
    };
    // Slot 0 stays empty: the start state is the empty walk.
    let mut out: [Option<ClosedWalk>; 4] = [None, None, None, None];
    for (idx, slot) in out.iter_mut().enumerate().skip(1) {
        let st = s * 4 + idx;
        if seen[st] {
            *slot = Some(trace(st));
        }
    }
    out
}

/// Splits a closed walk into cycles (discarding immediate back-and-forth
/// traversals of one edge, which are positive and even).
fn decompose(g: &SignedGraph, walk: &ClosedWalk) -> Vec<Cycle> {
    let mut stack_v: Vec<VertexId> = vec![walk.start];
    let mut stack_e: Vec<EdgeId> = Vec::new();
    let mut out = Vec::new();
    for &e in &walk.edges {
        let x = *stack_v.last().unwrap();
        let y = g.edge(e).other(x);
        stack_e.push(e);
        if let Some(pos) = stack_v.iter().position(|&v| v == y) {
            let verts: Vec<VertexId> = stack_v[pos..].to_vec();
            let edges: Vec<EdgeId> = stack_e[pos..].to_vec();
            stack_v.truncate(pos + 1);
            stack_e.truncate(pos);
            if edges.len() == 2 && edges[0] == edges[1] {
                continue;
            }
            let sign = edges
                .iter()
                .fold(Sign::Positive, |s, &f| s * g.edge(f).sign);
            out.push(Cycle {
                vertices: verts,
                edges,
                sign,
            });
        } else {
            stack_v.push(y);
        }
    }
    out
}

/// Shortest cycle with the requested sign and parity.
///
/// Negative cycles of any parity and odd cycles of any sign are found from
/// shortest closed walks on the signed double cover; the remaining classes by
/// exact search over simple cycles of increasing length.
pub fn shortest_cycle(g: &SignedGraph, sign: Option<Sign>, parity: Parity) -> Option<Cycle> {
    match (sign, parity) {
        (Some(Sign::Negative), Parity::Any) => shortest_from_walks(g, &[2, 3], |c| {
            c.sign == Sign::Negative
        }),
        (None, Parity::Odd) => shortest_from_walks(g, &[1, 3], |c| c.len() % 2 == 1),
        _ => {
            let lower = match sign {
                Some(Sign::Negative) => negative_girth(g)?,
                _ => 1,
            };
            for len in lower..=g.vertex_count().max(1) {
                if !parity.admits(len) {
                    continue;
                }
                let mut found = None;
                cycles_of_length(g, len, |c| {
                    if sign.is_none_or(|s| s == c.sign) {
                        found = Some(c.clone());
                        false
                    } else {
                        true
                    }
                });
                if found.is_some() {
                    return found;
                }
            }
            None
        }
    }
}

fn shortest_from_walks(
    g: &SignedGraph,
    classes: &[usize],
    wanted: impl Fn(&Cycle) -> bool,
) -> Option<Cycle> {
    let mut best: Option<Cycle> = None;
    for s in 0..g.vertex_count() {
        let walks = closed_walks_from(g, s);
        for &c in classes {
            let Some(w) = &walks[c] else { continue };
            if best.as_ref().is_some_and(|b| b.len() <= w.edges.len()) {
                continue;
            }
            let cyc = decompose(g, w)
                .into_iter()
                .filter(&wanted)
                .min_by_key(Cycle::len)
                .expect("closed walk of this class contains such a cycle");
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
    }
    best
}

/// Length of a shortest negative cycle, or `None` if the graph is balanced.
pub fn negative_girth(g: &SignedGraph) -> Option<usize> {
    shortest_cycle(g, Some(Sign::Negative), Parity::Any).map(|c| c.len())
}

/// Returns a cycle of `g` that does not map to a negative `k`-cycle, if any.
///
/// A closed walk that is positive and odd, or negative and shorter than `k`, or
/// negative with parity different from `k`, always contains such a cycle among
/// the cycles it decomposes into; conversely every such cycle is such a walk.
pub fn contains_ok_element(g: &SignedGraph, k: usize) -> Option<Cycle> {
    assert!(k >= 1, "k must be at least 1");
    let wrong_parity = if k.is_multiple_of(2) { 3 } else { 2 };
    let mut best: Option<Cycle> = None;
    for s in 0..g.vertex_count() {
        let walks = closed_walks_from(g, s);
        let mut candidates: Vec<&ClosedWalk> = Vec::new();
        if let Some(w) = &walks[1] {
            candidates.push(w);
        }
        if let Some(w) = &walks[wrong_parity] {
            candidates.push(w);
        }
        let right_parity = 5 - wrong_parity;
        if let Some(w) = &walks[right_parity] {
            if w.edges.len() < k {
                candidates.push(w);
            }
        }
        for w in candidates {
            let cyc = decompose(g, w)
                .into_iter()
                .filter(|c| c.is_ok_element(k))
                .min_by_key(Cycle::len)
                .expect("qualifying closed walk contains an O_k cycle");
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
    }
    best
}
