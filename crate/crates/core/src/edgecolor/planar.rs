//! Plane multigraphs given by rotation systems; face tracing and duals.

use thiserror::Error;

use crate::signed::{Sign, SignedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("edge {edge} has an endpoint outside 0..{n}")]
    VertexOutOfRange { edge: usize, n: usize },
    #[error("rotation lists {found} vertices, expected {n}")]
    RotationCount { found: usize, n: usize },
    #[error("rotation at vertex {vertex} mentions edge {edge}, which does not end there")]
    WrongEnd { vertex: VertexId, edge: usize },
    #[error("edge end of edge {edge} appears {count} times in the rotation system")]
    EndCount { edge: usize, count: usize },
    #[error("map is not connected")]
    Disconnected,
    #[error("Euler check failed: {n} - {m} + {f} != 2")]
    Euler { n: usize, m: usize, f: usize },
}

/// A connected multigraph with, for every vertex, the cyclic order of edge
/// ends around it. A loop's id appears twice in its vertex's rotation; the
/// first occurrence is its first end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMap {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub rotation: Vec<Vec<usize>>,
}

/// Faces as cyclic sequences of edge ids, plus the face of every dart
/// (`2e` leaves the first endpoint of `e`, `2e + 1` the second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub faces: Vec<Vec<usize>>,
    pub dart_face: Vec<usize>,
}

impl PlanarMap {
    /// The underlying multigraph with all edges positive; edge ids agree.
    pub fn graph(&self) -> SignedGraph {
        SignedGraph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (u, v, Sign::Positive)))
            .expect("edges checked against n")
    }

    fn tail(&self, dart: usize) -> VertexId {
        let (u, v) = self.edges[dart / 2];
        if dart.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    /// Position of every dart in its vertex's rotation.
    fn dart_positions(&self) -> Result<Vec<(VertexId, usize)>, PlanarError> {
        let m = self.edges.len();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.n || v >= self.n {
                return Err(PlanarError::VertexOutOfRange { edge: e, n: self.n });
            }
        }
        if self.rotation.len() != self.n {
            return Err(PlanarError::RotationCount {
                found: self.rotation.len(),
                n: self.n,
            });
        }
        let mut pos = vec![None; 2 * m];
        let mut seen = vec![0usize; m];
        for (x, rot) in self.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                if e >= m {
                    return Err(PlanarError::EndCount { edge: e, count: 0 });
                }
                let (u, v) = self.edges[e];
                let dart = if u == v && x == u {
                    2 * e + seen[e].min(1)
                } else if x == u {
                    2 * e
                } else if x == v {
                    2 * e + 1
                } else {
                    return Err(PlanarError::WrongEnd { vertex: x, edge: e });
                };
                seen[e] += 1;
                if pos[dart].is_some() {
                    return Err(PlanarError::EndCount { edge: e, count: seen[e] + usize::from(u != v) });
                }
                pos[dart] = Some((x, i));
            }
        }
        pos.into_iter()
            .enumerate()
            .map(|(d, p)| p.ok_or(PlanarError::EndCount { edge: d / 2, count: seen[d / 2] }))
            .collect()
    }
}

/// Traces the faces: after arriving along a dart, leave along the edge end
/// following the arrival end in the rotation. Checks Euler's formula.
pub fn faces_from_rotation(map: &PlanarMap) -> Result<Faces, PlanarError> {
    let pos = map.dart_positions()?;
    if !map.graph().is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let m = map.edges.len();
    // Dart sitting at position i of vertex x's rotation.
    let dart_at = |x: VertexId, i: usize| -> usize {
        let e = map.rotation[x][i];
        let (u, v) = map.edges[e];
        if u == v {
            // first occurrence is the first end
            let first = map.rotation[x].iter().position(|&f| f == e).unwrap();
            2 * e + usize::from(i != first)
        } else if x == u {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut dart_face = vec![usize::MAX; 2 * m];
    let mut faces = Vec::new();
    for start in 0..2 * m {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut face = Vec::new();
        let mut d = start;
        while dart_face[d] == usize::MAX {
            dart_face[d] = f;
            face.push(d / 2);
            let (x, i) = pos[d ^ 1];
            let len = map.rotation[x].len();
            d = dart_at(x, (i + 1) % len);
        }
        faces.push(face);
    }
    let (n, f) = (map.n, faces.len());
    if n + f != m + 2 {
        return Err(PlanarError::Euler { n, m, f });
    }
    debug_assert!((0..2 * m).all(|d| map.tail(d) == pos[d].0));
    Ok(Faces { faces, dart_face })
}

/// The dual multigraph: one vertex per face, dual edge `e` joining the faces
/// on the two sides of primal edge `e` (a loop when they coincide). Returned
/// as a plane map whose rotation at a face is its boundary order.
pub fn dual_graph(map: &PlanarMap) -> Result<PlanarMap, PlanarError> {
    let faces = faces_from_rotation(map)?;
    let m = map.edges.len();
    let edges: Vec<(VertexId, VertexId)> = (0..m)
        .map(|e| (faces.dart_face[2 * e], faces.dart_face[2 * e + 1]))
        .collect();
    Ok(PlanarMap {
        n: faces.faces.len(),
        edges,
        rotation: faces.faces,
    })
}
