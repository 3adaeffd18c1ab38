//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signed_bounds::signed::{Sign, SignedGraph, VertexMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edges of a random t-tree on `n` vertices.
pub fn random_ttree_edges(rng: &mut impl Rng, n: usize, t: usize) -> Vec<(usize, usize)> {
    let s = n.min(t + 1);
    let mut edges = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            edges.push((i, j));
        }
    }
    let mut cliques: Vec<Vec<usize>> = vec![(0..s).collect()];
    for v in s..n {
        let base = cliques.choose(rng).unwrap().clone();
        let drop = rng.gen_range(0..base.len());
        let face: Vec<usize> = base.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
        for &x in &face {
            edges.push((x, v));
        }
        let mut c = face;
        c.push(v);
        cliques.push(c);
    }
    edges
}

/// A random signed bipartite partial t-tree: a random t-tree, a random
/// 2-colouring, every bichromatic edge kept with probability `keep` and
/// signed at random, vertices relabelled at random.
pub fn random_bipartite_partial_ttree(rng: &mut impl Rng, n: usize, t: usize, keep: f64) -> SignedGraph {
    let edges = random_ttree_edges(rng, n, t);
    let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let mut g = SignedGraph::new(n);
    for (u, v) in edges {
        if side[u] != side[v] && rng.gen_bool(keep) {
            g.add_edge(relabel[u], relabel[v], Sign::from_negative(rng.gen()));
        }
    }
    g
}

/// Random weights of a bipartite weighted s-clique (pair order `01, 02, ...`)
/// with magnitudes in `1..=k`: each vertex gets a parity and a pair's
/// magnitude has the parity of the sum. With `k = 1` every weight is odd, so
/// only `s <= 2` is possible.
pub fn random_bipartite_clique(rng: &mut impl Rng, s: usize, k: i64) -> Vec<i64> {
    assert!(k >= 2 || s <= 2, "no bipartite {s}-clique with all weights odd");
    loop {
        let parity: Vec<i64> = (0..s).map(|_| rng.gen_range(0..2)).collect();
        let mut w = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let p = (parity[i] + parity[j]) % 2;
                let choices: Vec<i64> = (1..=k).filter(|m| (m + p) % 2 == 0).collect();
                if choices.is_empty() {
                    break;
                }
                let m = *choices.choose(rng).unwrap();
                w.push(if rng.gen() { m } else { -m });
            }
        }
        if w.len() == s * (s - 1) / 2 {
            return w;
        }
    }
}

/// Shortest negative closed walk, by BFS over (vertex, sign) from every
/// vertex. Equal to the negative girth.
pub fn oracle_negative_girth(g: &SignedGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![[usize::MAX; 2]; n];
        dist[s][0] = 0;
        let mut q = VecDeque::from([(s, 0usize)]);
        while let Some((x, p)) = q.pop_front() {
            for e in g.edges() {
                let y = if e.u == x {
                    e.v
                } else if e.v == x {
                    e.u
                } else {
                    continue;
                };
                let np = p ^ usize::from(e.sign.is_negative());
                if dist[y][np] == usize::MAX {
                    dist[y][np] = dist[x][p] + 1;
                    q.push_back((y, np));
                }
            }
        }
        if dist[s][1] != usize::MAX {
            best = Some(best.map_or(dist[s][1], |b| b.min(dist[s][1])));
        }
    }
    best
}

/// Expansion of weighted edges (`u, v, w`) into pairs of complementary paths.
pub fn oracle_expand(n: usize, edges: &[(usize, usize, i64)], k: i64) -> SignedGraph {
    let mut g = SignedGraph::new(n);
    for &(u, v, w) in edges {
        let a = w.unsigned_abs() as usize;
        for (len, neg) in [(a, w < 0), (2 * k as usize - a, w > 0)] {
            let mut prev = u;
            for i in 0..len {
                let next = if i + 1 == len { v } else { g.add_vertex() };
                g.add_edge(prev, next, Sign::from_negative(neg && i + 1 == len));
                prev = next;
            }
        }
    }
    g
}

/// Edge-by-edge check that `f` is a homomorphism after its switching.
pub fn oracle_is_hom(g: &SignedGraph, b: &SignedGraph, f: &VertexMap) -> bool {
    f.image.len() == g.vertex_count()
        && f.image.iter().all(|&x| x < b.vertex_count())
        && g.edges().iter().all(|e| {
            let flips = usize::from(f.switching.0[e.u]) + usize::from(f.switching.0[e.v]);
            let want = if flips == 1 { e.sign.flipped() } else { e.sign };
            let (x, y) = (f.image[e.u], f.image[e.v]);
            b.edges()
                .iter()
                .any(|h| ((h.u, h.v) == (x, y) || (h.u, h.v) == (y, x)) && h.sign == want)
        })
}

/// Lexicographically least weight vector over all orderings of the s
/// positions.
pub fn oracle_canonical(w: &[i64], s: usize) -> Vec<i64> {
    let idx = |i: usize, j: usize| {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * (2 * s - a - 1) / 2 + (b - a - 1)
    };
    let mut perm: Vec<usize> = (0..s).collect();
    let mut best: Option<Vec<i64>> = None;
    loop {
        let mut out = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                out.push(w[idx(perm[i], perm[j])]);
            }
        }
        if best.as_ref().is_none_or(|b| out < *b) {
            best = Some(out);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
