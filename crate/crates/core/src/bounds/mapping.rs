//! Homomorphisms from a closed certificate, clique by clique.

use std::collections::BTreeMap;

use super::closure::{clique_weights, face_index};
use super::{closedness_defects, enumerate_wide_cliques, BoundError, CliqueSet, DistanceGraph};
use crate::signed::{negative_girth, verify_homomorphism, SignedGraph, Switching, VertexId, VertexMap};
use crate::ttree::{completion_weights, recognize_partial_ttree, CliqueSequence};
use crate::weighted::{canonicalize_weight, pair_index};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyMode {
    /// Weights must agree exactly.
    Exact,
    /// Weights must agree after switching some vertices of the copy.
    UpToSwitching,
}

/// Position `i` of a weighted clique placed on `vertices[i]`, switched when
/// `switching[i]` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCopy {
    pub vertices: Vec<VertexId>,
    pub switching: Vec<bool>,
}

impl LabeledCopy {
    /// Weights of the copy after switching, in pair order.
    pub fn effective_weights(&self, d: &DistanceGraph) -> Vec<i64> {
        let s = self.vertices.len();
        let mut out = vec![0; s * s.saturating_sub(1) / 2];
        for i in 0..s {
            for j in i + 1..s {
                let w = d.weight(self.vertices[i], self.vertices[j]).expect("copy inside a clique");
                out[pair_index(i, j, s)] = flip(w, self.switching[i] ^ self.switching[j], d.k());
            }
        }
        out
    }
}

fn flip(w: i64, negate: bool, k: i64) -> i64 {
    canonicalize_weight(if negate { -w } else { w }, k).expect("weight in range")
}

fn magnitudes(w: &[i64]) -> Vec<i64> {
    let mut m: Vec<i64> = w.iter().map(|x| x.abs()).collect();
    m.sort_unstable();
    m
}

/// Finds a placement of the weighted clique `x` (pair order over `m <= t+1`
/// positions) inside a member of the certificate.
pub fn find_isomorphic_copy(d: &DistanceGraph, cert: &CliqueSet, x: &[i64], mode: CopyMode) -> Option<LabeledCopy> {
    let m = positions(x.len());
    let full = m == cert.t + 1;
    let want = magnitudes(x);
    for c in &cert.cliques {
        if full && magnitudes(&clique_weights(d, c).weights) != want {
            continue;
        }
        let mut chosen = Vec::with_capacity(m);
        let mut used = vec![false; c.len()];
        if let Some(copy) = place(d, c, x, m, mode, &mut chosen, &mut used) {
            return Some(copy);
        }
    }
    None
}

fn positions(pairs: usize) -> usize {
    // Smallest m with m(m-1)/2 == pairs.
    let mut m = 1;
    while m * (m - 1) / 2 < pairs {
        m += 1;
    }
    assert_eq!(m * (m - 1) / 2, pairs, "not a clique weight vector");
    m
}

fn place(
    d: &DistanceGraph,
    c: &[VertexId],
    x: &[i64],
    m: usize,
    mode: CopyMode,
    chosen: &mut Vec<VertexId>,
    used: &mut [bool],
) -> Option<LabeledCopy> {
    if chosen.len() == m {
        return match mode {
            CopyMode::Exact => Some(LabeledCopy {
                vertices: chosen.clone(),
                switching: vec![false; m],
            }),
            CopyMode::UpToSwitching => switching_for(d, chosen, x).map(|switching| LabeledCopy {
                vertices: chosen.clone(),
                switching,
            }),
        };
    }
    let i = chosen.len();
    for (p, &v) in c.iter().enumerate() {
        if used[p] {
            continue;
        }
        let fits = mode == CopyMode::UpToSwitching
            || (0..i).all(|j| d.weight(chosen[j], v) == Some(x[pair_index(j, i, m)]));
        if !fits {
            continue;
        }
        used[p] = true;
        chosen.push(v);
        let r = place(d, c, x, m, mode, chosen, used);
        chosen.pop();
        used[p] = false;
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Switching of `vs` (first vertex fixed) making its weights equal `x`.
fn switching_for(d: &DistanceGraph, vs: &[VertexId], x: &[i64]) -> Option<Vec<bool>> {
    let m = vs.len();
    let k = d.k();
    let mut eps = vec![false; m];
    // Position j is determined by the pair (0, j) unless that weight is k.
    for j in 1..m {
        let w = d.weight(vs[0], vs[j])?;
        let target = x[pair_index(0, j, m)];
        eps[j] = if w == target { false } else if flip(w, true, k) == target { true } else { return None };
    }
    let undetermined: Vec<usize> = (1..m).filter(|&j| d.weight(vs[0], vs[j]) == Some(k)).collect();
    for mask in 0..1usize << undetermined.len() {
        for (b, &j) in undetermined.iter().enumerate() {
            eps[j] = mask >> b & 1 == 1;
        }
        let ok = (0..m).all(|i| {
            (i + 1..m).all(|j| d.weight(vs[i], vs[j]).map(|w| flip(w, eps[i] ^ eps[j], k)) == Some(x[pair_index(i, j, m)]))
        });
        if ok {
            return Some(eps);
        }
    }
    None
}

/// The even one of `k` and `k - 1`.
fn even_weight(k: i64) -> i64 {
    if k % 2 == 0 {
        k
    } else {
        k - 1
    }
}

/// One step towards the clique whose weights all equal the even one of
/// `k, k-1`: a position and its new incident weights, or `None` when done.
/// Every intermediate clique stays bipartite and 2k-wide.
fn next_step(e: &[i64], s: usize, k: i64) -> Option<(usize, Vec<i64>)> {
    let a = even_weight(k);
    let o = if a == k { k - 1 } else { k };
    let w = |i: usize, j: usize| e[pair_index(i, j, s)];
    let mixed = (0..s).find(|&v| (0..s).any(|j| j != v && w(v, j) != k && w(v, j) != k - 1));
    let v = match mixed {
        Some(v) => v,
        None => {
            if (0..s).all(|i| (i + 1..s).all(|j| w(i, j) == a)) {
                return None;
            }
            // All weights are k or k-1; move a vertex out of the smaller class.
            let class: Vec<bool> = (0..s).map(|j| j != 0 && w(0, j) != a).collect();
            let ones = class.iter().filter(|&&c| c).count();
            let minority = ones * 2 <= s;
            (0..s).find(|&j| class[j] == minority).unwrap()
        }
    };
    let keep: Vec<i64> = (0..s).map(|j| if j == v { 0 } else if w(v, j) % 2 == 0 { a } else { o }).collect();
    let swap: Vec<i64> = (0..s).map(|j| if j == v { 0 } else if w(v, j) % 2 == 0 { o } else { a }).collect();
    let count = |p: &Vec<i64>| p.iter().filter(|&&x| x == a).count();
    let pattern = if mixed.is_none() || count(&swap) > count(&keep) { swap } else { keep };
    Some((v, pattern))
}

fn apply_step(e: &mut [i64], s: usize, v: usize, pattern: &[i64]) {
    for j in 0..s {
        if j != v {
            e[pair_index(v, j, s)] = pattern[j];
        }
    }
}

/// Replaces position `v` of `copy` by a vertex of the certificate so that
/// its effective weights become `pattern`.
fn reweight(
    d: &DistanceGraph,
    cert: &CliqueSet,
    faces: &BTreeMap<Vec<VertexId>, Vec<usize>>,
    copy: &mut LabeledCopy,
    v: usize,
    pattern: &[i64],
) -> Option<()> {
    let s = copy.vertices.len();
    let k = d.k();
    let others: Vec<usize> = (0..s).filter(|&j| j != v).collect();
    let mut face: Vec<VertexId> = others.iter().map(|&j| copy.vertices[j]).collect();
    face.sort_unstable();
    for &ci in faces.get(&face)? {
        let u = *cert.cliques[ci].iter().find(|x| face.binary_search(x).is_err()).unwrap();
        for delta in [false, true] {
            let fits = others.iter().all(|&j| {
                d.weight(copy.vertices[j], u) == Some(flip(pattern[j], copy.switching[j] ^ delta, k))
            });
            if fits {
                copy.vertices[v] = u;
                copy.switching[v] = delta;
                return Some(());
            }
        }
    }
    None
}

/// Finds a copy of `x` (a full-size member of the list) up to switching by
/// walking from a certificate clique to the all-even clique and from there
/// back to `x`, one re-weighted vertex at a time.
pub fn walk_to_copy(d: &DistanceGraph, cert: &CliqueSet, x: &[i64]) -> Option<LabeledCopy> {
    let s = cert.t + 1;
    let k = d.k();
    let faces = face_index(&cert.cliques);
    let mut copy = LabeledCopy {
        vertices: cert.cliques.first()?.clone(),
        switching: vec![false; s],
    };
    let mut guard = 0;
    while let Some((v, p)) = next_step(&copy.effective_weights(d), s, k) {
        reweight(d, cert, &faces, &mut copy, v, &p)?;
        guard += 1;
        assert!(guard <= 4 * s, "walk to the even clique does not terminate");
    }
    // The abstract walk from x; replayed backwards on the copy.
    let mut y = x.to_vec();
    let mut steps = Vec::new();
    while let Some((v, p)) = next_step(&y, s, k) {
        let old: Vec<i64> = (0..s).map(|j| if j == v { 0 } else { y[pair_index(v, j, s)] }).collect();
        apply_step(&mut y, s, v, &p);
        steps.push((v, old));
        assert!(steps.len() <= 4 * s, "walk to the even clique does not terminate");
    }
    for (v, old) in steps.iter().rev() {
        reweight(d, cert, &faces, &mut copy, *v, old)?;
    }
    Some(copy)
}

/// Maps `g` to the base of `d` using a closed certificate and a t-tree
/// completion `seq` of `g`. Panics if the certificate turns out not to supply
/// a required extension, which closedness rules out.
pub fn map_partial_ttree(
    g: &SignedGraph,
    seq: &CliqueSequence,
    d: &DistanceGraph,
    cert: &CliqueSet,
) -> Result<VertexMap, BoundError> {
    if cert.is_empty() {
        return Err(BoundError::EmptyCertificate);
    }
    if cert.t != seq.t || cert.k != d.k() {
        return Err(BoundError::ParamMismatch(format!(
            "certificate (t={}, k={}) against sequence t={} and k={}",
            cert.t,
            cert.k,
            seq.t,
            d.k()
        )));
    }
    if !g.is_bipartite() {
        return Err(BoundError::BadParams("graph to map is not bipartite".into()));
    }
    if let Some(girth) = negative_girth(g).filter(|&l| (l as i64) < 2 * d.k()) {
        return Err(BoundError::BadParams(format!(
            "graph to map has a negative cycle of length {girth} < {}",
            2 * d.k()
        )));
    }
    let l = enumerate_wide_cliques(cert.t, cert.k);
    if !closedness_defects(d, cert, &l)?.is_empty() {
        return Err(BoundError::NotClosed);
    }
    let n = g.vertex_count();
    let map = if g.is_connected() || n == 0 {
        map_connected(g, seq, d, cert)?
    } else {
        let mut image = vec![0; n];
        let mut switching = vec![false; n];
        for comp in g.components() {
            let (sub, _) = g.induced_subgraph(&comp);
            let part = if sub.vertex_count() == 1 {
                VertexMap {
                    image: vec![cert.cliques[0][0]],
                    switching: Switching::identity(1),
                }
            } else {
                let sub_seq = recognize_partial_ttree(&sub, seq.t)?
                    .ok_or_else(|| BoundError::BadParams("a component is not a partial t-tree".into()))?;
                map_connected(&sub, &sub_seq, d, cert)?
            };
            for (i, &v) in comp.iter().enumerate() {
                image[v] = part.image[i];
                switching[v] = part.switching.0[i];
            }
        }
        VertexMap {
            image,
            switching: Switching(switching),
        }
    };
    assert!(
        verify_homomorphism(g, d.base(), &map)?,
        "certificate produced a map that is not a homomorphism"
    );
    Ok(map)
}

fn map_connected(
    g: &SignedGraph,
    seq: &CliqueSequence,
    d: &DistanceGraph,
    cert: &CliqueSet,
) -> Result<VertexMap, BoundError> {
    let n = g.vertex_count();
    let k = d.k();
    let h = completion_weights(g, seq, k)?;
    let mut w = vec![0i64; n * n];
    for e in h.edges() {
        w[e.u * n + e.v] = e.w;
        w[e.v * n + e.u] = e.w;
    }
    let seed = seq.seed();
    let m = seed.len();
    let mut x = vec![0; m * m.saturating_sub(1) / 2];
    for i in 0..m {
        for j in i + 1..m {
            x[pair_index(i, j, m)] = w[seed[i] * n + seed[j]];
        }
    }
    let copy = find_isomorphic_copy(d, cert, &x, CopyMode::Exact)
        .or_else(|| find_isomorphic_copy(d, cert, &x, CopyMode::UpToSwitching))
        .unwrap_or_else(|| panic!("no copy of the seed clique {x:?} in a closed certificate"));
    let mut image = vec![usize::MAX; n];
    let mut sw = vec![false; n];
    for (i, &v) in seed.iter().enumerate() {
        image[v] = copy.vertices[i];
        sw[v] = copy.switching[i];
    }
    let faces = face_index(&cert.cliques);
    for (i, att) in seq.attach.iter().enumerate() {
        let z = seq.order[m + i];
        let mut pairs: Vec<(VertexId, i64)> =
            att.iter().map(|&a| (image[a], flip(w[a * n + z], sw[a], k))).collect();
        pairs.sort_unstable();
        let face: Vec<VertexId> = pairs.iter().map(|p| p.0).collect();
        let members = faces
            .get(&face)
            .unwrap_or_else(|| panic!("face {face:?} lies in no certificate clique"));
        let mut found = None;
        'delta: for delta in [false, true] {
            for &ci in members {
                let u = *cert.cliques[ci].iter().find(|x| face.binary_search(x).is_err()).unwrap();
                if pairs.iter().all(|&(f, b)| d.weight(f, u) == Some(flip(b, delta, k))) {
                    found = Some((u, delta));
                    break 'delta;
                }
            }
        }
        let (u, delta) = found.unwrap_or_else(|| panic!("closed certificate lacks an extension of face {face:?}"));
        image[z] = u;
        sw[z] = delta;
    }
    Ok(VertexMap {
        image,
        switching: Switching(sw),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{all_cliques, build_distance_graph};
    use crate::signed::{named_graph, NamedGraph, Sign};

    fn cneg4_edges() -> (DistanceGraph, CliqueSet) {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let d = build_distance_graph(&b, 2).unwrap();
        let w = all_cliques(&d, 1);
        (d, w)
    }

    #[test]
    fn steps_reach_the_even_clique() {
        for (x, k) in [(vec![1, 2, 1], 2), (vec![-1, 2, -1], 2), (vec![1, 1, 2, 2, 1, 1], 3), (vec![3, 3, 2], 3)] {
            let s = positions(x.len());
            let mut y = x.clone();
            let mut n = 0;
            while let Some((v, p)) = next_step(&y, s, k) {
                apply_step(&mut y, s, v, &p);
                n += 1;
                assert!(n < 10);
            }
            assert!(y.iter().all(|&w| w == even_weight(k)), "{x:?} -> {y:?}");
        }
    }

    #[test]
    fn copy_of_a_member_is_found() {
        let (d, w) = cneg4_edges();
        let x = clique_weights(&d, &w.cliques[3]).weights;
        let c = find_isomorphic_copy(&d, &w, &x, CopyMode::Exact).unwrap();
        assert_eq!(c.effective_weights(&d), x);
    }

    #[test]
    fn forest_maps_to_four_cycle() {
        let (d, w) = cneg4_edges();
        // A path with a negative middle edge plus an isolated vertex.
        let g = SignedGraph::from_edges(
            5,
            [(0, 1, Sign::Positive), (1, 2, Sign::Negative), (2, 3, Sign::Positive)],
        )
        .unwrap();
        let seq = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        let f = map_partial_ttree(&g, &seq, &d, &w).unwrap();
        assert!(verify_homomorphism(&g, d.base(), &f).unwrap());
    }

    #[test]
    fn empty_certificate_rejected() {
        let (d, _) = cneg4_edges();
        let g = SignedGraph::from_edges(2, [(0, 1, Sign::Positive)]).unwrap();
        let seq = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        let empty = CliqueSet::new(1, 2, vec![]);
        assert_eq!(
            map_partial_ttree(&g, &seq, &d, &empty),
            Err(BoundError::EmptyCertificate)
        );
    }

    #[test]
    fn unclosed_certificate_rejected() {
        let (d, _) = cneg4_edges();
        let g = SignedGraph::from_edges(2, [(0, 1, Sign::Positive)]).unwrap();
        let seq = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        let one = CliqueSet::new(1, 2, vec![vec![0, 1]]);
        assert_eq!(map_partial_ttree(&g, &seq, &d, &one), Err(BoundError::NotClosed));
    }
}
