//! Deciding whether a signed bipartite graph bounds the signed bipartite
//! partial t-trees of a given negative girth.
//!
//! The decision prunes the (t+1)-cliques of the distance graph of `B` down to
//! the largest closed subset. A nonempty result is a certificate from which
//! homomorphisms are built clique by clique; an empty one yields a
//! counterexample assembled from the pruning trace.

mod closure;
mod counterexample;
mod distance_graph;
mod list;
mod mapping;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signed::{GraphError, SignedGraph, VertexId};
use crate::ttree::TreeError;
use crate::weighted::WeightError;

pub use closure::{
    all_cliques, closedness_defects, negate_pattern, prune_one_at_a_time, prune_to_closed, CliqueSet, Defect,
    PruneTrace, TraceRound,
};
pub use counterexample::{build_counterexample, Counterexample, ORACLE_LIMIT};
pub use distance_graph::{build_distance_graph, check_target, DistanceGraph};
pub use list::{canonical_form, enumerate_wide_cliques, weight_domain, WideCliqueList};
pub use mapping::{find_isomorphic_copy, walk_to_copy, map_partial_ttree, CopyMode, LabeledCopy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("target graph is not bipartite")]
    TargetNotBipartite,
    #[error("target negative girth is {}, expected {expected}", found.map_or("infinite".to_string(), |g| g.to_string()))]
    TargetGirth { found: Option<usize>, expected: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("the clique list is empty")]
    EmptyList,
    #[error("pruning did not end with an empty clique set")]
    TraceNotEmpty,
    #[error("counterexample would exceed {limit} weighted vertices")]
    CounterexampleTooLarge { limit: usize },
    #[error("counterexample check failed: {0}")]
    CounterexampleInvalid(String),
    #[error("certificate is not closed")]
    NotClosed,
    #[error("certificate is empty")]
    EmptyCertificate,
    #[error("certificate clique {0:?} is not a clique of the distance graph")]
    BadCertificateClique(Vec<VertexId>),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug)]
pub enum BoundVerdict {
    /// A nonempty closed clique set, with the rounds that produced it.
    Yes { certificate: CliqueSet, trace: PruneTrace },
    /// Pruning emptied the clique set.
    No {
        counterexample: Box<Counterexample>,
        trace: PruneTrace,
    },
}

impl BoundVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, BoundVerdict::Yes { .. })
    }
}

/// Decides whether `b` bounds the signed bipartite partial t-trees of negative
/// girth at least `2k`.
pub fn check_bound(b: &SignedGraph, t: usize, k: i64) -> Result<BoundVerdict, BoundError> {
    if t < 1 {
        return Err(BoundError::BadParams("t must be at least 1".into()));
    }
    let d = build_distance_graph(b, k)?;
    check_bound_with(&d, t)
}

/// As [`check_bound`], on a prebuilt distance graph.
pub fn check_bound_with(d: &DistanceGraph, t: usize) -> Result<BoundVerdict, BoundError> {
    let l = enumerate_wide_cliques(t, d.k());
    if l.is_empty() {
        return Err(BoundError::EmptyList);
    }
    let w0 = all_cliques(d, t);
    let (w, trace) = prune_to_closed(d, &w0, &l)?;
    if !w.is_empty() {
        return Ok(BoundVerdict::Yes { certificate: w, trace });
    }
    let counterexample = build_counterexample(d, &w0, &trace, &l)?;
    Ok(BoundVerdict::No {
        counterexample: Box::new(counterexample),
        trace,
    })
}

/// Serialised form of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: usize,
    pub k: i64,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub cliques: Vec<CertificateClique>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateClique {
    pub vertices: Vec<VertexId>,
    pub weights: Vec<((VertexId, VertexId), i64)>,
}

impl Certificate {
    pub fn from_clique_set(d: &DistanceGraph, w: &CliqueSet, base: Option<String>) -> Self {
        let cliques = w
            .cliques
            .iter()
            .map(|c| {
                let mut weights = Vec::new();
                for (i, &x) in c.iter().enumerate() {
                    for &y in &c[i + 1..] {
                        weights.push(((x, y), d.weight(x, y).expect("clique pair")));
                    }
                }
                CertificateClique {
                    vertices: c.clone(),
                    weights,
                }
            })
            .collect();
        Certificate {
            t: w.t,
            k: w.k,
            base,
            cliques,
        }
    }

    /// Checks the stored cliques against the distance graph and returns them
    /// as a clique set. Closedness is checked by the caller when needed.
    pub fn to_clique_set(&self, d: &DistanceGraph) -> Result<CliqueSet, BoundError> {
        if self.k != d.k() {
            return Err(BoundError::ParamMismatch(format!(
                "certificate k={}, distance graph k={}",
                self.k,
                d.k()
            )));
        }
        let n = d.vertex_count();
        for c in &self.cliques {
            let ok = c.vertices.len() == self.t + 1
                && c.vertices.iter().all(|&v| v < n)
                && c.weights.iter().all(|&((x, y), w)| x < n && y < n && d.weight(x, y) == Some(w))
                && c.vertices
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| c.vertices[i + 1..].iter().all(|&y| x != y && d.weight(x, y).is_some()));
            if !ok {
                return Err(BoundError::BadCertificateClique(c.vertices.clone()));
            }
        }
        Ok(CliqueSet::new(
            self.t,
            self.k,
            self.cliques.iter().map(|c| c.vertices.clone()).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{find_homomorphism, named_graph, NamedGraph};

    #[test]
    fn four_cycle_bounds_forests() {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let v = check_bound(&b, 1, 2).unwrap();
        match v {
            BoundVerdict::Yes { certificate, .. } => assert_eq!(certificate.len(), 6),
            BoundVerdict::No { .. } => panic!("expected a certificate"),
        }
    }

    #[test]
    fn four_cycle_does_not_bound_series_parallel() {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let BoundVerdict::No { counterexample, trace } = check_bound(&b, 2, 2).unwrap() else {
            panic!("expected a counterexample");
        };
        assert_eq!(trace.removed_count(), 4);
        let g = &counterexample.graph;
        assert!(g.is_bipartite());
        assert!(find_homomorphism(g, &b).is_none());
        assert_eq!(counterexample.oracle_verified, Some(true));
    }

    #[test]
    fn certificate_round_trip() {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let d = build_distance_graph(&b, 2).unwrap();
        let w = all_cliques(&d, 1);
        let cert = Certificate::from_clique_set(&d, &w, Some("cneg4.sg".into()));
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_clique_set(&d).unwrap(), w);
        assert!(json.contains("\"B\":\"cneg4.sg\""));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        let d = build_distance_graph(&b, 2).unwrap();
        let mut cert = Certificate::from_clique_set(&d, &all_cliques(&d, 1), None);
        cert.cliques[0].weights[0].1 = -cert.cliques[0].weights[0].1;
        assert!(matches!(
            cert.to_clique_set(&d),
            Err(BoundError::BadCertificateClique(_))
        ));
    }

    #[test]
    fn bad_t() {
        let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
        assert!(matches!(check_bound(&b, 0, 2), Err(BoundError::BadParams(_))));
    }
}
