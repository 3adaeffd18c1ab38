//! Counterexamples from an emptying pruning trace.
//!
//! A weighted t-tree is grown from a root clique `X` of the list. Every way a
//! homomorphism could place the root onto a clique `Q` of the distance graph
//! (with some switching) is blocked by a gadget: a new vertex attached to the
//! face of `Q` that failed closedness, carrying the missing extension pattern.
//! Wherever that vertex could land, the resulting clique was removed in an
//! earlier round, so a gadget for it is glued on in turn. Cliques removed in
//! the first round have no landing spots at all and need nothing further.

use std::collections::HashMap;

use super::closure::PruneTrace;
use super::list::permutations;
use super::{BoundError, CliqueSet, DistanceGraph, WideCliqueList};
use crate::signed::{find_homomorphism, negative_girth, SignedGraph, VertexId};
use crate::ttree::{completion_edges, CliqueSequence};
use crate::weighted::{barbar_expand, canonicalize_weight, pair_index, WeightedSignedGraph};

/// Counterexamples with at most this many vertices are checked against the
/// homomorphism oracle.
pub const ORACLE_LIMIT: usize = 25;

/// Largest weighted t-tree the construction will build.
const TREE_LIMIT: usize = 200_000;

/// Expansions up to this order have their clique sequence validated.
const SEQUENCE_CHECK_LIMIT: usize = 2_000;

#[derive(Clone, Debug)]
pub struct Counterexample {
    /// The signed bipartite partial t-tree with no homomorphism to the target.
    pub graph: SignedGraph,
    /// A t-tree completion of `graph`.
    pub sequence: CliqueSequence,
    /// The weighted t-tree whose expansion is `graph`.
    pub tree: WeightedSignedGraph,
    pub tree_sequence: CliqueSequence,
    /// Canonical weights of the root clique.
    pub root: Vec<i64>,
    /// `Some(true)` when the oracle confirmed that no homomorphism exists;
    /// `None` when the graph was too large to check.
    pub oracle_verified: Option<bool>,
}

struct Removal {
    round: usize,
    dropped: VertexId,
    pattern: Vec<i64>,
}

struct Builder<'a> {
    d: &'a DistanceGraph,
    cliques: &'a [Vec<VertexId>],
    index: HashMap<&'a [VertexId], usize>,
    removal: Vec<Removal>,
    memo: HashMap<(usize, Vec<bool>), usize>,
    // Output under construction.
    n: usize,
    edges: Vec<(VertexId, VertexId, i64)>,
    attach: Vec<Vec<VertexId>>,
}

/// A landing spot for a gadget vertex: the clique it would complete and the
/// switching of the root of the next gadget.
struct Landing {
    clique: usize,
    eps: Vec<bool>,
    // For each position of the landing clique, the position of the parent
    // clique it comes from, or `None` for the new vertex.
    from: Vec<Option<usize>>,
}

impl<'a> Builder<'a> {
    fn k(&self) -> i64 {
        self.d.k()
    }

    fn canon(&self, w: i64, negate: bool) -> i64 {
        canonicalize_weight(if negate { -w } else { w }, self.k()).unwrap()
    }

    fn face(&self, qi: usize) -> Vec<usize> {
        let q = &self.cliques[qi];
        (0..q.len()).filter(|&p| q[p] != self.removal[qi].dropped).collect()
    }

    fn landings(&self, qi: usize, eps: &[bool]) -> Vec<Landing> {
        let q = &self.cliques[qi];
        let rem = &self.removal[qi];
        let face = self.face(qi);
        let mut out = Vec::new();
        for u in 0..self.d.vertex_count() {
            if face.iter().any(|&p| q[p] == u) {
                continue;
            }
            for delta in [false, true] {
                let fits = face.iter().zip(&rem.pattern).all(|(&p, &a)| {
                    self.d.weight(q[p], u) == Some(self.canon(a, delta))
                });
                if !fits {
                    continue;
                }
                let mut members: Vec<(VertexId, Option<usize>)> = face.iter().map(|&p| (q[p], Some(p))).collect();
                members.push((u, None));
                members.sort_unstable();
                let verts: Vec<VertexId> = members.iter().map(|m| m.0).collect();
                let ci = *self
                    .index
                    .get(verts.as_slice())
                    .unwrap_or_else(|| panic!("clique {verts:?} completing a defect is not wide"));
                assert!(
                    self.removal[ci].round < rem.round,
                    "clique {verts:?} satisfied the defect of {q:?} but was removed later"
                );
                let eps_child = members.iter().map(|m| m.1.map_or(delta, |p| eps[p])).collect();
                out.push(Landing {
                    clique: ci,
                    eps: eps_child,
                    from: members.iter().map(|m| m.1).collect(),
                });
            }
        }
        out
    }

    /// Vertices added by the gadget for `qi` under switching `eps`, capped.
    fn size(&mut self, qi: usize, eps: &[bool]) -> usize {
        let key: Vec<bool> = eps.iter().map(|&e| e ^ eps[0]).collect();
        if let Some(&s) = self.memo.get(&(qi, key.clone())) {
            return s;
        }
        let mut total = 1usize;
        for l in self.landings(qi, &key) {
            total = total.saturating_add(self.size(l.clique, &l.eps)).min(TREE_LIMIT + 1);
        }
        self.memo.insert((qi, key), total);
        total
    }

    fn new_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    /// Glues the gadget for `qi` under `eps` onto the tree vertices `root`
    /// (aligned with the sorted clique).
    fn glue(&mut self, qi: usize, eps: &[bool], root: &[VertexId]) {
        let face = self.face(qi);
        let z = self.new_vertex();
        let pattern = self.removal[qi].pattern.clone();
        for (&p, &a) in face.iter().zip(&pattern) {
            let w = self.canon(a, eps[p]);
            self.edges.push((root[p], z, w));
        }
        let mut att: Vec<VertexId> = face.iter().map(|&p| root[p]).collect();
        att.sort_unstable();
        self.attach.push(att);
        for l in self.landings(qi, eps) {
            let child_root: Vec<VertexId> = l.from.iter().map(|f| f.map_or(z, |p| root[p])).collect();
            self.glue(l.clique, &l.eps, &child_root);
        }
    }
}

/// A placement of the root clique onto a clique of the distance graph.
struct Realization {
    clique: usize,
    eps: Vec<bool>,
    // perm[i] = position in the clique of root position i.
    perm: Vec<usize>,
}

fn realizations(
    d: &DistanceGraph,
    cliques: &[Vec<VertexId>],
    l: &WideCliqueList,
) -> HashMap<Vec<i64>, Vec<Realization>> {
    let s = l.size();
    let perms = permutations(s);
    let k = d.k();
    let mut out: HashMap<Vec<i64>, Vec<Realization>> = HashMap::new();
    for (ci, q) in cliques.iter().enumerate() {
        for mask in 0..1usize << (s - 1) {
            let eps: Vec<bool> = (0..s).map(|p| p > 0 && mask >> (p - 1) & 1 == 1).collect();
            let mut sw = vec![0; s * (s - 1) / 2];
            for i in 0..s {
                for j in i + 1..s {
                    let w = d.weight(q[i], q[j]).unwrap();
                    sw[pair_index(i, j, s)] = canonicalize_weight(if eps[i] ^ eps[j] { -w } else { w }, k).unwrap();
                }
            }
            let canon = l.canonical(&sw);
            let list = out.entry(canon.clone()).or_default();
            for p in &perms {
                let matches = (0..s).all(|i| (i + 1..s).all(|j| canon[pair_index(i, j, s)] == sw[pair_index(p[i], p[j], s)]));
                if matches {
                    list.push(Realization {
                        clique: ci,
                        eps: eps.clone(),
                        perm: p.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Builds a counterexample from a pruning trace that removed every clique of
/// `w0`.
pub fn build_counterexample(
    d: &DistanceGraph,
    w0: &CliqueSet,
    trace: &PruneTrace,
    l: &WideCliqueList,
) -> Result<Counterexample, BoundError> {
    let t = w0.t;
    if t < 2 {
        return Err(BoundError::BadParams("counterexamples need t >= 2".into()));
    }
    if l.t != t || l.k != d.k() || w0.k != d.k() {
        return Err(BoundError::ParamMismatch("trace, list and distance graph disagree".into()));
    }
    if l.is_empty() {
        return Err(BoundError::EmptyList);
    }
    let index: HashMap<&[VertexId], usize> = w0.cliques.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut removal: Vec<Option<Removal>> = (0..w0.len()).map(|_| None).collect();
    for r in &trace.rounds {
        for x in &r.removed {
            let ci = *index
                .get(x.clique.as_slice())
                .ok_or_else(|| BoundError::ParamMismatch(format!("trace clique {:?} not in the set", x.clique)))?;
            removal[ci] = Some(Removal {
                round: r.round,
                dropped: x.dropped,
                pattern: x.pattern.clone(),
            });
        }
    }
    if removal.iter().any(Option::is_none) {
        return Err(BoundError::TraceNotEmpty);
    }
    let mut b = Builder {
        d,
        cliques: &w0.cliques,
        index,
        removal: removal.into_iter().map(Option::unwrap).collect(),
        memo: HashMap::new(),
        n: t + 1,
        edges: Vec::new(),
        attach: Vec::new(),
    };

    let real = realizations(d, &w0.cliques, l);
    let mut best: Option<(usize, &Vec<i64>)> = None;
    for x in &l.members {
        let mut total = t + 1;
        for r in real.get(x).map_or(&[][..], |v| v.as_slice()) {
            total = total.saturating_add(b.size(r.clique, &r.eps)).min(TREE_LIMIT + 1);
        }
        if best.is_none_or(|(s, _)| total < s) {
            best = Some((total, x));
        }
    }
    let (total, root) = best.expect("list is nonempty");
    if total > TREE_LIMIT {
        return Err(BoundError::CounterexampleTooLarge { limit: TREE_LIMIT });
    }
    let s = t + 1;
    for i in 0..s {
        for j in i + 1..s {
            b.edges.push((i, j, root[pair_index(i, j, s)]));
        }
    }
    for r in real.get(root).map_or(&[][..], |v| v.as_slice()) {
        let mut root_of = vec![0; s];
        for (i, &p) in r.perm.iter().enumerate() {
            root_of[p] = i;
        }
        b.glue(r.clique, &r.eps, &root_of);
    }

    let tree = WeightedSignedGraph::from_edges(b.n, b.edges.iter().copied())?;
    let tree_sequence = CliqueSequence {
        t,
        order: (0..b.n).collect(),
        attach: b.attach.clone(),
    };
    let graph = barbar_expand(&tree, d.k())?;
    let sequence = expansion_sequence(&tree, &tree_sequence, d.k());
    let invalid = |m: String| Err(BoundError::CounterexampleInvalid(m));
    if !graph.is_bipartite() {
        return invalid("not bipartite".into());
    }
    if let Some(g) = negative_girth(&graph) {
        if (g as i64) < 2 * d.k() {
            return invalid(format!("negative girth {g}"));
        }
    }
    if graph.vertex_count() <= SEQUENCE_CHECK_LIMIT {
        if let Err(e) = completion_edges(&graph, &sequence) {
            return invalid(e.to_string());
        }
    }
    let oracle_verified = if graph.vertex_count() <= ORACLE_LIMIT {
        if find_homomorphism(&graph, d.base()).is_some() {
            return invalid("a homomorphism to the target exists".into());
        }
        Some(true)
    } else {
        None
    };
    Ok(Counterexample {
        graph,
        sequence,
        tree,
        tree_sequence,
        root: root.clone(),
        oracle_verified,
    })
}

/// A t-tree completion of the expansion of a weighted t-tree (t >= 2): each
/// path vertex is attached to its predecessor, the far endpoint and t-2 more
/// vertices of a clique holding the expanded edge.
fn expansion_sequence(tree: &WeightedSignedGraph, seq: &CliqueSequence, k: i64) -> CliqueSequence {
    let t = seq.t;
    let mut holder: HashMap<(VertexId, VertexId), Vec<VertexId>> = HashMap::new();
    for c in seq.cliques() {
        for (i, &x) in c.iter().enumerate() {
            for &y in &c[i + 1..] {
                holder.entry((x.min(y), x.max(y))).or_insert_with(|| c.clone());
            }
        }
    }
    let mut order = seq.order.clone();
    let mut attach = seq.attach.clone();
    let mut next = tree.vertex_count();
    for e in tree.edges() {
        let clique = &holder[&(e.u.min(e.v), e.u.max(e.v))];
        let others: Vec<VertexId> = clique.iter().copied().filter(|&x| x != e.u && x != e.v).take(t - 2).collect();
        let len1 = e.w.unsigned_abs() as usize;
        for len in [len1, (2 * k) as usize - len1] {
            let mut prev = e.u;
            for _ in 1..len {
                let mut a = others.clone();
                a.push(prev);
                a.push(e.v);
                a.sort_unstable();
                order.push(next);
                attach.push(a);
                prev = next;
                next += 1;
            }
        }
    }
    CliqueSequence { t, order, attach }
}
