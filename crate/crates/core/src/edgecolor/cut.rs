//! Exhaustive odd-cut checking for small multigraphs.

use crate::signed::{SignedGraph, VertexId};

/// Largest vertex count checked exhaustively.
pub const MAX_CUT_VERTICES: usize = 24;

/// A proper vertex subset of odd size whose cut is too small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCut {
    pub side: Vec<VertexId>,
    pub size: usize,
}

/// Whether every cut `(X, V - X)` with `|X|` odd and `X` a nonempty proper
/// subset has at least `r` edges. `Ok(None)` when it does, `Ok(Some(cut))`
/// with a smallest violating cut otherwise, and `Err(n)` when the graph is
/// too large to check.
pub fn min_odd_cut_at_least(g: &SignedGraph, r: usize) -> Result<Option<OddCut>, usize> {
    let n = g.vertex_count();
    if n > MAX_CUT_VERTICES {
        return Err(n);
    }
    if n == 0 {
        return Ok(None);
    }
    let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.u != e.v {
            nbrs[e.u].push(e.v);
            nbrs[e.v].push(e.u);
        }
    }
    let full = (1u32 << n) - 1;
    let mut in_x = vec![false; n];
    let mut toward_x = vec![0usize; n];
    let mut cut = 0usize;
    let mut size = 0usize;
    let mut mask = 0u32;
    let mut best: Option<(usize, u32)> = None;
    // Gray code walk over all subsets, one vertex flipped per step.
    for i in 1u32..=full {
        let v = i.trailing_zeros() as usize;
        let deg = nbrs[v].len();
        if in_x[v] {
            for &w in &nbrs[v] {
                toward_x[w] -= 1;
            }
            cut = cut + 2 * toward_x[v] - deg;
            size -= 1;
        } else {
            cut = cut + deg - 2 * toward_x[v];
            for &w in &nbrs[v] {
                toward_x[w] += 1;
            }
            size += 1;
        }
        in_x[v] = !in_x[v];
        mask ^= 1 << v;
        if size % 2 == 1 && mask != full && cut < r {
            let rep = if (n - size) % 2 == 1 { mask.min(full ^ mask) } else { mask };
            if best.is_none_or(|(c, m)| (cut, rep) < (c, m)) {
                best = Some((cut, rep));
            }
        }
    }
    Ok(best.map(|(size, m)| OddCut {
        side: (0..n).filter(|&v| m >> v & 1 == 1).collect(),
        size,
    }))
}
