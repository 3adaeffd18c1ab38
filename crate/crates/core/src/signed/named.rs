//! Small named signed graphs used as fixtures and targets.

use super::{GraphError, Sign, SignedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// Cycle of length `l` whose only negative edge joins `l-1` and `0`.
    NegativeCycle(usize),
    PositiveCycle(usize),
    Complete(usize, Sign),
    /// All-negative circular clique: `i ~ j` when `q <= |i-j| <= p-q` circularly.
    CircularClique { p: usize, q: usize },
    K5,
    /// K_{2,2,2}: triangles 0-1-2 and 3-4-5 joined by a 6-cycle.
    Octahedron,
    /// 8-cycle plus the four long diagonals.
    Wagner,
    /// Two 5-cycles joined by a perfect matching.
    PentagonalPrism,
}

impl NamedGraph {
    /// Looks a fixture up by name: `cneg L`, `cpos L`, `kpos N`, `kneg N`,
    /// `circ P Q`, `k5`, `octahedron`, `wagner`, `prism`.
    pub fn from_name(name: &str, params: &[usize]) -> Result<NamedGraph, GraphError> {
        let want = |count: usize| -> Result<(), GraphError> {
            if params.len() == count {
                Ok(())
            } else {
                Err(GraphError::InvalidParams {
                    name: name.to_string(),
                    reason: format!("expected {count} parameters, got {}", params.len()),
                })
            }
        };
        let g = match name {
            "cneg" => {
                want(1)?;
                NamedGraph::NegativeCycle(params[0])
            }
            "cpos" => {
                want(1)?;
                NamedGraph::PositiveCycle(params[0])
            }
            "kpos" | "kneg" => {
                want(1)?;
                NamedGraph::Complete(params[0], Sign::from_negative(name == "kneg"))
            }
            "circ" => {
                want(2)?;
                NamedGraph::CircularClique {
                    p: params[0],
                    q: params[1],
                }
            }
            "k5" => NamedGraph::K5,
            "octahedron" => NamedGraph::Octahedron,
            "wagner" => NamedGraph::Wagner,
            "prism" => NamedGraph::PentagonalPrism,
            _ => return Err(GraphError::UnknownName(name.to_string())),
        };
        Ok(g)
    }

    /// The four forbidden minors of graphs of treewidth at most three.
    pub fn treewidth3_obstructions() -> [NamedGraph; 4] {
        [
            NamedGraph::K5,
            NamedGraph::Octahedron,
            NamedGraph::Wagner,
            NamedGraph::PentagonalPrism,
        ]
    }
}

fn cycle(l: usize, last: Sign) -> SignedGraph {
    let mut g = SignedGraph::new(l);
    for i in 0..l - 1 {
        g.add_edge(i, i + 1, Sign::Positive);
    }
    g.add_edge(l - 1, 0, last);
    g
}

fn positive(n: usize, edges: &[(usize, usize)]) -> SignedGraph {
    SignedGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, Sign::Positive)))
        .expect("fixture edges in range")
}

pub fn named_graph(name: &NamedGraph) -> Result<SignedGraph, GraphError> {
    let invalid = |reason: &str| GraphError::InvalidParams {
        name: format!("{name:?}"),
        reason: reason.to_string(),
    };
    Ok(match *name {
        NamedGraph::NegativeCycle(l) | NamedGraph::PositiveCycle(l) => {
            if l == 0 {
                return Err(invalid("cycle length must be at least 1"));
            }
            let sign = Sign::from_negative(matches!(name, NamedGraph::NegativeCycle(_)));
            cycle(l, sign)
        }
        NamedGraph::Complete(n, sign) => {
            let mut g = SignedGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v, sign);
                }
            }
            g
        }
        NamedGraph::CircularClique { p, q } => {
            if q == 0 || p < 2 * q {
                return Err(invalid("need q >= 1 and p >= 2q"));
            }
            let mut g = SignedGraph::new(p);
            for i in 0..p {
                for j in i + 1..p {
                    let d = j - i;
                    if q <= d.min(p - d) {
                        g.add_edge(i, j, Sign::Negative);
                    }
                }
            }
            g
        }
        NamedGraph::K5 => named_graph(&NamedGraph::Complete(5, Sign::Positive))?,
        NamedGraph::Octahedron => positive(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (0, 4),
                (1, 4),
                (1, 5),
                (2, 5),
                (2, 3),
            ],
        ),
        NamedGraph::Wagner => {
            let mut es: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
            es.extend((0..4).map(|i| (i, i + 4)));
            positive(8, &es)
        }
        NamedGraph::PentagonalPrism => {
            let mut es: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            es.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
            es.extend((0..5).map(|i| (i, i + 5)));
            positive(10, &es)
        }
    })
}
