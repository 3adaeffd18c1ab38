//! Edge colouring of 2k-regular plane multigraphs whose duals are partial
//! 3-trees, with `2k` colours.

mod cut;
mod matching;
mod pipeline;
mod planar;

use thiserror::Error;

use crate::bounds::BoundError;
use crate::spc::SpcError;
use crate::ttree::TreeError;

pub use cut::{min_odd_cut_at_least, OddCut, MAX_CUT_VERTICES};
pub use matching::{maximum_matching, odd_components, perfect_matching, tutte_violator};
pub use pipeline::{edge_color, signed_dual, verify_edge_coloring, EdgeColoring};
pub use planar::{dual_graph, faces_from_rotation, Faces, PlanarError, PlanarMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeColorError {
    #[error("k must be at least 2 (odd numbers of colours are not handled), got {0}")]
    BadK(i64),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular { vertex: usize, degree: usize, expected: usize },
    #[error("odd cut of size {size} < {required} around vertices {side:?}")]
    SmallOddCut { side: Vec<usize>, size: usize, required: usize },
    #[error("odd cuts unchecked: {n} vertices exceeds the exhaustive limit")]
    CutUnchecked { n: usize },
    #[error("no perfect matching; removing {violator:?} leaves too many odd components")]
    NoPerfectMatching { violator: Vec<usize> },
    #[error("dual is not a partial 3-tree")]
    DualTreewidth,
    #[error("colouring has {found} entries for {expected} edges")]
    UnknownEdge { expected: usize, found: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Spc(#[from] SpcError),
}

/// Two vertices joined by `m` parallel edges.
pub fn parallel_digon(m: usize) -> PlanarMap {
    PlanarMap {
        n: 2,
        edges: vec![(0, 1); m],
        rotation: vec![(0..m).collect(), (0..m).rev().collect()],
    }
}

/// The octahedron on `+z, +x, +y, -x, -y, -z` (ids 0..5) embedded on the
/// sphere, rotations counterclockwise seen from outside.
pub fn octahedron_map() -> PlanarMap {
    PlanarMap {
        n: 6,
        edges: vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (1, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
        ],
        rotation: vec![
            vec![0, 1, 2, 3],
            vec![4, 0, 7, 8],
            vec![1, 4, 9, 5],
            vec![5, 10, 6, 2],
            vec![3, 6, 11, 7],
            vec![8, 11, 10, 9],
        ],
    }
}

/// A 4-regular plane multigraph with an odd cut of size 2: two triangles
/// with two doubled sides each, joined by two edges.
pub fn split_odd_cut_map() -> PlanarMap {
    PlanarMap {
        n: 6,
        edges: vec![
            (0, 1),
            (0, 2),
            (0, 2),
            (1, 2),
            (1, 2),
            (0, 3),
            (1, 4),
            (3, 4),
            (3, 5),
            (3, 5),
            (4, 5),
            (4, 5),
        ],
        rotation: vec![
            vec![5, 1, 2, 0],
            vec![6, 0, 4, 3],
            vec![2, 1, 3, 4],
            vec![5, 7, 9, 8],
            vec![10, 11, 7, 6],
            vec![8, 9, 11, 10],
        ],
    }
}

/// The dual of the prism `C4 x P_layers` (nested squares joined by spokes).
/// It is 4-regular with no odd cut below 4, but for `layers >= 3` its dual
/// has treewidth 4 and so is not a partial 3-tree.
pub fn nested_squares_dual(layers: usize) -> PlanarMap {
    assert!(layers >= 2);
    let id = |i: usize, j: usize| 4 * i + j % 4;
    let mut edges = Vec::new();
    let mut cycle = vec![[0usize; 4]; layers];
    let mut spoke = vec![[0usize; 4]; layers - 1];
    for i in 0..layers {
        for j in 0..4 {
            cycle[i][j] = edges.len();
            edges.push((id(i, j), id(i, j + 1)));
        }
    }
    for i in 0..layers - 1 {
        for j in 0..4 {
            spoke[i][j] = edges.len();
            edges.push((id(i, j), id(i + 1, j)));
        }
    }
    // Counterclockwise at a corner: outward spoke, next corner, inward
    // spoke, previous corner.
    let mut rotation = vec![Vec::new(); 4 * layers];
    for i in 0..layers {
        for j in 0..4 {
            let r = &mut rotation[id(i, j)];
            if i + 1 < layers {
                r.push(spoke[i][j]);
            }
            r.push(cycle[i][j]);
            if i > 0 {
                r.push(spoke[i - 1][j]);
            }
            r.push(cycle[i][(j + 3) % 4]);
        }
    }
    let prism = PlanarMap {
        n: 4 * layers,
        edges,
        rotation,
    };
    dual_graph(&prism).expect("prism embedding is planar")
}
