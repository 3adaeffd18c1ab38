//! Edge colouring through the signed dual and signed projective cubes.
//!
//! Signing the dual of a 2k-regular plane multigraph negatively on a perfect
//! matching makes every face a negative 2k-cycle. A homomorphism of the dual
//! to `SPC(2k-1)` sends each face onto a negative 2k-cycle, which uses every
//! generator exactly once, so reading colours off the image edges colours
//! the edges around each vertex with distinct colours.

use serde::{Deserialize, Serialize};

use super::cut::min_odd_cut_at_least;
use super::matching::{perfect_matching, tutte_violator};
use super::planar::{dual_graph, PlanarError, PlanarMap};
use super::EdgeColorError;
use crate::bounds::{all_cliques, map_partial_ttree};
use crate::signed::{negative_girth, Sign, SignedGraph};
use crate::spc::spc_distance_graph;
use crate::ttree::recognize_partial_ttree;

/// Colour of every edge, by edge id; colours `0..2k-1` are `e_1..e_{2k-1}`
/// and `2k-1` is `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
}

/// The dual signed negatively on the duals of `matching`.
pub fn signed_dual(map: &PlanarMap, matching: &[usize]) -> Result<SignedGraph, PlanarError> {
    let dual = dual_graph(map)?;
    let mut neg = vec![false; map.edges.len()];
    for &e in matching {
        neg[e] = true;
    }
    Ok(SignedGraph::from_edges(
        dual.n,
        dual.edges.iter().enumerate().map(|(e, &(u, v))| (u, v, Sign::from_negative(neg[e]))),
    )
    .expect("dual edges in range"))
}

/// Properly colours the edges of a connected 2k-regular plane multigraph
/// with `2k` colours, provided every odd cut has at least `2k` edges and the
/// dual is a partial 3-tree.
pub fn edge_color(map: &PlanarMap, k: i64) -> Result<EdgeColoring, EdgeColorError> {
    if k < 2 {
        return Err(EdgeColorError::BadK(k));
    }
    let r = 2 * k as usize;
    dual_graph(map)?;
    let g = map.graph();
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) != r) {
        return Err(EdgeColorError::NotRegular {
            vertex: v,
            degree: g.degree(v),
            expected: r,
        });
    }
    match min_odd_cut_at_least(&g, r) {
        Err(n) => return Err(EdgeColorError::CutUnchecked { n }),
        Ok(Some(cut)) => {
            return Err(EdgeColorError::SmallOddCut {
                side: cut.side,
                size: cut.size,
                required: r,
            })
        }
        Ok(None) => {}
    }
    let matching = match perfect_matching(&g) {
        Some(m) => m,
        None => {
            return Err(EdgeColorError::NoPerfectMatching {
                violator: tutte_violator(&g).unwrap_or_default(),
            })
        }
    };
    let h = signed_dual(map, &matching)?;
    assert!(h.is_bipartite(), "dual of a regular plane graph of even degree is not bipartite");
    // Each face of the dual surrounds one primal vertex, which meets exactly
    // one matching edge.
    for v in 0..g.vertex_count() {
        let around = g.neighbors(v);
        let negatives = around.iter().filter(|&&(_, e)| h.edge(e).sign.is_negative()).count();
        assert!(around.len() == r && negatives == 1, "face around {v} is not a negative {r}-cycle");
    }
    let girth = negative_girth(&h).expect("faces are negative cycles");
    assert!(girth >= r, "signed dual has a negative cycle of length {girth} < {r}");
    let seq = recognize_partial_ttree(&h, 3)?.ok_or(EdgeColorError::DualTreewidth)?;
    let d = spc_distance_graph(k)?;
    let cert = all_cliques(&d, 3);
    let f = map_partial_ttree(&h, &seq, &d, &cert)?;
    let n = (2 * k - 1) as usize;
    let ones = (1usize << n) - 1;
    let colors: Vec<usize> = h
        .edges()
        .iter()
        .map(|e| {
            let x = f.image[e.u] ^ f.image[e.v];
            if x == ones {
                n
            } else {
                assert_eq!(x.count_ones(), 1, "image of a dual edge is not an edge");
                x.trailing_zeros() as usize
            }
        })
        .collect();
    let coloring = EdgeColoring { colors };
    assert!(
        verify_edge_coloring(&g, &coloring, r)?,
        "pipeline produced an improper colouring"
    );
    Ok(coloring)
}

/// Whether the colouring is proper and uses colours below `r`; for an
/// r-regular graph, also that every colour class is a perfect matching.
pub fn verify_edge_coloring(g: &SignedGraph, c: &EdgeColoring, r: usize) -> Result<bool, EdgeColorError> {
    if c.colors.len() != g.edge_count() {
        return Err(EdgeColorError::UnknownEdge {
            expected: g.edge_count(),
            found: c.colors.len(),
        });
    }
    if c.colors.iter().any(|&x| x >= r) {
        return Ok(false);
    }
    let n = g.vertex_count();
    let mut seen = vec![vec![false; r]; n];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            return Ok(false);
        }
        let col = c.colors[e];
        for x in [edge.u, edge.v] {
            if seen[x][col] {
                return Ok(false);
            }
            seen[x][col] = true;
        }
    }
    let regular = (0..n).all(|v| g.degree(v) == r);
    Ok(!regular || seen.iter().all(|s| s.iter().all(|&b| b)))
}
