//! Clique sets, closedness and pruning to the largest closed subset.
//!
//! For a clique `K` and a vertex `v` of `K`, let `F = K - v`. An extension
//! pattern of `F` is a weight vector from the vertices of `F` (in increasing
//! order) to a new vertex such that `F` plus the new vertex is bipartite and
//! 2k-wide. `K` is satisfied at `F` when every extension pattern `a` is
//! realised, exactly or with all signs reversed (the new vertex switched), by
//! some clique of the set containing `F`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::list::{weight_domain, WideCliqueList};
use super::{BoundError, DistanceGraph};
use crate::signed::VertexId;
use crate::weighted::{canonicalize_weight, clique_is_2k_wide, pair_index, WeightedClique};

/// A set of labelled (t+1)-cliques of a distance graph, each stored as its
/// sorted vertex list; the list is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    pub t: usize,
    pub k: i64,
    pub cliques: Vec<Vec<VertexId>>,
}

impl CliqueSet {
    pub fn new(t: usize, k: i64, mut cliques: Vec<Vec<VertexId>>) -> Self {
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort();
        cliques.dedup();
        CliqueSet { t, k, cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn contains(&self, vertices: &[VertexId]) -> bool {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.cliques.binary_search(&v).is_ok()
    }

    pub fn weighted(&self, d: &DistanceGraph, i: usize) -> WeightedClique {
        clique_weights(d, &self.cliques[i])
    }
}

pub(crate) fn clique_weights(d: &DistanceGraph, vertices: &[VertexId]) -> WeightedClique {
    WeightedClique::from_fn(vertices.to_vec(), d.k(), |x, y| d.weight(x, y))
        .expect("clique of the distance graph")
}

/// Every (t+1)-subset inducing a complete, bipartite, 2k-wide subgraph.
pub fn all_cliques(d: &DistanceGraph, t: usize) -> CliqueSet {
    let n = d.vertex_count();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t + 1);
    grow(d, t + 1, 0, n, &mut cur, &mut out);
    let kept: Vec<Vec<VertexId>> = out
        .into_par_iter()
        .filter(|c| {
            let w = clique_weights(d, c);
            w.is_bipartite() && clique_is_2k_wide(&w).unwrap_or(false)
        })
        .collect();
    CliqueSet::new(t, d.k(), kept)
}

fn grow(
    d: &DistanceGraph,
    size: usize,
    from: usize,
    n: usize,
    cur: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for v in from..n {
        if cur.iter().all(|&u| d.weight(u, v).is_some()) {
            cur.push(v);
            grow(d, size, v + 1, n, cur, out);
            cur.pop();
        }
    }
}

/// A clique failing closedness: dropping `dropped` leaves a face with an
/// extension `pattern` (weights from the face vertices, increasing order)
/// that no clique of the set realises, even up to switching the new vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub clique: Vec<VertexId>,
    pub dropped: VertexId,
    pub pattern: Vec<i64>,
}

/// Reverses the sign of every weight (the new vertex switched).
pub fn negate_pattern(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|&x| canonicalize_weight(-x, k).unwrap()).collect()
}

/// Extension patterns of faces, cached by face weight vector.
pub(crate) struct ExtensionCache<'a> {
    list: &'a WideCliqueList,
    domain: Vec<i64>,
    cache: std::sync::Mutex<HashMap<Vec<i64>, std::sync::Arc<Vec<Vec<i64>>>>>,
}

impl<'a> ExtensionCache<'a> {
    pub(crate) fn new(list: &'a WideCliqueList) -> Self {
        ExtensionCache {
            list,
            domain: weight_domain(list.k),
            cache: Default::default(),
        }
    }

    /// Patterns extending a face whose internal weights are `face_w`
    /// (pair order over `t` positions), sorted.
    pub(crate) fn patterns(&self, face_w: &[i64]) -> std::sync::Arc<Vec<Vec<i64>>> {
        if let Some(p) = self.cache.lock().unwrap().get(face_w) {
            return p.clone();
        }
        let t = self.list.t;
        let s = t + 1;
        let mut out = Vec::new();
        let mut full = vec![0i64; s * t / 2];
        for i in 0..t {
            for j in i + 1..t {
                full[pair_index(i, j, s)] = face_w[pair_index(i, j, t)];
            }
        }
        let total = self.domain.len().pow(t as u32);
        for code in 0..total {
            let mut c = code;
            let mut a = Vec::with_capacity(t);
            for i in 0..t {
                let x = self.domain[c % self.domain.len()];
                c /= self.domain.len();
                full[pair_index(i, t, s)] = x;
                a.push(x);
            }
            if self.list.contains(&full) {
                out.push(a);
            }
        }
        out.sort();
        let arc = std::sync::Arc::new(out);
        self.cache
            .lock()
            .unwrap()
            .insert(face_w.to_vec(), arc.clone());
        arc
    }
}

pub(crate) fn face_weights(d: &DistanceGraph, face: &[VertexId]) -> Vec<i64> {
    let t = face.len();
    let mut w = vec![0; t * t.saturating_sub(1) / 2];
    for i in 0..t {
        for j in i + 1..t {
            w[pair_index(i, j, t)] = d.weight(face[i], face[j]).expect("face of a clique");
        }
    }
    w
}

/// Cliques of the set grouped by face (sorted t-subset).
pub(crate) fn face_index(cliques: &[Vec<VertexId>]) -> BTreeMap<Vec<VertexId>, Vec<usize>> {
    let mut idx: BTreeMap<Vec<VertexId>, Vec<usize>> = BTreeMap::new();
    for (ci, c) in cliques.iter().enumerate() {
        for drop in 0..c.len() {
            let mut f = c.clone();
            f.remove(drop);
            idx.entry(f).or_default().push(ci);
        }
    }
    idx
}

fn check_params(d: &DistanceGraph, w: &CliqueSet, l: &WideCliqueList) -> Result<(), BoundError> {
    if w.t != l.t || w.k != l.k || d.k() != l.k {
        return Err(BoundError::ParamMismatch(format!(
            "clique set (t={}, k={}), list (t={}, k={}), distance graph k={}",
            w.t,
            w.k,
            l.t,
            l.k,
            d.k()
        )));
    }
    if let Some(c) = w.cliques.iter().find(|c| c.len() != w.t + 1) {
        return Err(BoundError::ParamMismatch(format!(
            "clique {c:?} does not have {} vertices",
            w.t + 1
        )));
    }
    Ok(())
}

/// All defective cliques of `w`, one defect each, in clique order.
pub fn closedness_defects(
    d: &DistanceGraph,
    w: &CliqueSet,
    l: &WideCliqueList,
) -> Result<Vec<Defect>, BoundError> {
    check_params(d, w, l)?;
    let ext = ExtensionCache::new(l);
    Ok(defects_with(d, &w.cliques, &ext, l.k))
}

fn defects_with(
    d: &DistanceGraph,
    cliques: &[Vec<VertexId>],
    ext: &ExtensionCache<'_>,
    k: i64,
) -> Vec<Defect> {
    let idx = face_index(cliques);
    let faces: Vec<(&Vec<VertexId>, &Vec<usize>)> = idx.iter().collect();
    // First missing pattern per face, or None when the face is satisfied.
    let missing: HashMap<&Vec<VertexId>, Option<Vec<i64>>> = faces
        .par_iter()
        .map(|&(face, members)| {
            let present: HashSet<Vec<i64>> = members
                .iter()
                .map(|&ci| {
                    let u = *cliques[ci].iter().find(|x| !face.contains(x)).unwrap();
                    face.iter().map(|&f| d.weight(f, u).unwrap()).collect()
                })
                .collect();
            let needed = ext.patterns(&face_weights(d, face));
            let gap = needed
                .iter()
                .find(|a| !present.contains(*a) && !present.contains(&negate_pattern(a, k)))
                .cloned();
            (face, gap)
        })
        .collect();
    cliques
        .iter()
        .filter_map(|c| {
            c.iter().enumerate().find_map(|(i, &v)| {
                let mut f = c.clone();
                f.remove(i);
                missing[&f].clone().map(|pattern| Defect {
                    clique: c.clone(),
                    dropped: v,
                    pattern,
                })
            })
        })
        .collect()
}

/// Cliques removed in one pruning round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRound {
    pub round: usize,
    pub removed: Vec<Defect>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneTrace {
    pub rounds: Vec<TraceRound>,
}

impl PruneTrace {
    pub fn removed_count(&self) -> usize {
        self.rounds.iter().map(|r| r.removed.len()).sum()
    }
}

/// Removes all defective cliques round by round until the set is closed.
/// The result is the largest closed subset of `w0`.
pub fn prune_to_closed(
    d: &DistanceGraph,
    w0: &CliqueSet,
    l: &WideCliqueList,
) -> Result<(CliqueSet, PruneTrace), BoundError> {
    check_params(d, w0, l)?;
    let ext = ExtensionCache::new(l);
    let mut alive = w0.cliques.clone();
    let mut trace = PruneTrace::default();
    loop {
        let defects = defects_with(d, &alive, &ext, l.k);
        if defects.is_empty() {
            break;
        }
        let gone: HashSet<&Vec<VertexId>> = defects.iter().map(|x| &x.clique).collect();
        let next: Vec<Vec<VertexId>> = alive.iter().filter(|c| !gone.contains(c)).cloned().collect();
        trace.rounds.push(TraceRound {
            round: trace.rounds.len() + 1,
            removed: defects,
        });
        alive = next;
    }
    Ok((CliqueSet::new(w0.t, w0.k, alive), trace))
}

/// Pruning variant removing only the first defective clique per round; used to
/// check that the fixed point does not depend on the removal schedule.
pub fn prune_one_at_a_time(
    d: &DistanceGraph,
    w0: &CliqueSet,
    l: &WideCliqueList,
) -> Result<CliqueSet, BoundError> {
    check_params(d, w0, l)?;
    let ext = ExtensionCache::new(l);
    let mut alive = w0.cliques.clone();
    while let Some(first) = defects_with(d, &alive, &ext, l.k).into_iter().next() {
        alive.retain(|c| *c != first.clique);
    }
    Ok(CliqueSet::new(w0.t, w0.k, alive))
}
