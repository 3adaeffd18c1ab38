//! The list of all unlabelled bipartite 2k-wide (t+1)-cliques.

use std::collections::HashSet;

use crate::weighted::{pair_index, triangle_is_2k_wide};

/// Admissible canonical weights for parameter `k`: `±1..±(k-1)` and `+k`,
/// in increasing order.
pub fn weight_domain(k: i64) -> Vec<i64> {
    let mut d: Vec<i64> = (1..k).map(|m| -m).collect();
    d.reverse();
    d.extend(1..=k);
    d
}

/// Permutations of `0..s` in lexicographic order.
pub(crate) fn permutations(s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..s).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..s).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..s).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Lexicographically least weight vector over all relabellings.
pub fn canonical_form(weights: &[i64], s: usize, perms: &[Vec<usize>]) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    let mut cand = vec![0; weights.len()];
    for p in perms {
        for i in 0..s {
            for j in i + 1..s {
                cand[pair_index(i, j, s)] = weights[pair_index(p[i], p[j], s)];
            }
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand.clone());
        }
    }
    best.unwrap_or_default()
}

/// All unlabelled bipartite 2k-wide (t+1)-cliques over canonical weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideCliqueList {
    pub t: usize,
    pub k: i64,
    /// Canonical weight vectors (pair order), sorted.
    pub members: Vec<Vec<i64>>,
    index: HashSet<Vec<i64>>,
    perms: Vec<Vec<usize>>,
}

impl WideCliqueList {
    pub fn size(&self) -> usize {
        self.t + 1
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn canonical(&self, weights: &[i64]) -> Vec<i64> {
        canonical_form(weights, self.size(), &self.perms)
    }

    /// Whether the labelled clique with these weights is a member up to relabelling.
    pub fn contains(&self, weights: &[i64]) -> bool {
        self.index.contains(&self.canonical(weights))
    }
}

/// Enumerates the list by backtracking over pair weights, rejecting a partial
/// assignment as soon as a completed triangle is odd or not 2k-wide.
pub fn enumerate_wide_cliques(t: usize, k: i64) -> WideCliqueList {
    assert!(t >= 1 && k >= 1, "t and k must be positive");
    let s = t + 1;
    let m = s * (s - 1) / 2;
    let domain = weight_domain(k);
    let perms = permutations(s);
    // Pairs in pair_index order; a pair (i, j) closes triangles (l, i, j), l < i.
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).collect();
    let mut index = HashSet::new();
    let mut w = vec![0i64; m];
    fill(0, &pairs, &domain, s, k, &mut w, &mut |w: &[i64]| {
        index.insert(canonical_form(w, s, &perms));
    });
    let mut members: Vec<Vec<i64>> = index.iter().cloned().collect();
    members.sort();
    WideCliqueList {
        t,
        k,
        members,
        index,
        perms,
    }
}

fn fill(
    at: usize,
    pairs: &[(usize, usize)],
    domain: &[i64],
    s: usize,
    k: i64,
    w: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if at == pairs.len() {
        emit(w);
        return;
    }
    let (i, j) = pairs[at];
    'next: for &x in domain {
        w[at] = x;
        // Pairs are filled in order, so when (i, j) is set, (l, i) and (l, j)
        // for l < i are already assigned.
        for l in 0..i {
            let a = w[pair_index(l, i, s)];
            let b = w[pair_index(l, j, s)];
            if (a + b + x).rem_euclid(2) != 0 || !triangle_is_2k_wide(a, b, x, k).unwrap() {
                continue 'next;
            }
        }
        fill(at + 1, pairs, domain, s, k, w, emit);
    }
}
