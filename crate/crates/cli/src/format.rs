//! Line formats for signed graphs (`.sg`), weighted graphs (`.swg`), plane
//! maps (`.pm`), SPC edge labels (`.labels`) and edge colourings.
//!
//! Blank lines and anything after `#` are ignored. Writers emit exactly the
//! form their readers accept, so every emitted file reparses to an equal
//! structure.

use std::fmt::Write as _;

use signed_bounds::edgecolor::{EdgeColoring, PlanarMap};
use signed_bounds::signed::{Sign, SignedGraph};
use signed_bounds::spc::SpcLabel;
use signed_bounds::weighted::WeightedSignedGraph;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected {expected} {what} lines, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error("empty input")]
    Empty,
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, as (1-based number, tokens).
type Lines<'a> = Vec<(usize, Vec<&'a str>)>;

fn lines(text: &str) -> Lines<'_> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = l.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, FormatError> {
    let v: usize = num(line, tok, "vertex")?;
    if v >= n {
        return Err(err(line, format!("vertex {v} out of range for {n} vertices")));
    }
    Ok(v)
}

/// Parses the `<magic> <n> <m>` header; returns (n, m, remaining lines).
fn header<'a>(
    text: &'a str,
    magic: &str,
) -> Result<(usize, usize, Lines<'a>), FormatError> {
    let mut ls = lines(text);
    if ls.is_empty() {
        return Err(FormatError::Empty);
    }
    let (line, toks) = ls.remove(0);
    if toks.len() != 3 || toks[0] != magic {
        return Err(err(line, format!("expected header `{magic} <n> <m>`")));
    }
    let n = num(line, toks[1], "vertex count")?;
    let m = num(line, toks[2], "edge count")?;
    Ok((n, m, ls))
}

fn body_count(what: &'static str, expected: usize, found: usize) -> Result<(), FormatError> {
    if expected != found {
        return Err(FormatError::Count { what, expected, found });
    }
    Ok(())
}

pub fn read_sg(text: &str) -> Result<SignedGraph, FormatError> {
    let (n, m, body) = header(text, "sg")?;
    body_count("edge", m, body.len())?;
    let mut g = SignedGraph::new(n);
    for (line, toks) in body {
        if toks.len() != 3 {
            return Err(err(line, "expected `u v s`"));
        }
        let u = vertex(line, toks[0], n)?;
        let v = vertex(line, toks[1], n)?;
        let s = match toks[2] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => return Err(err(line, format!("sign must be + or -, got `{other}`"))),
        };
        g.add_edge(u, v, s);
    }
    Ok(g)
}

pub fn write_sg(g: &SignedGraph) -> String {
    let mut out = format!("sg {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let s = if e.sign.is_negative() { '-' } else { '+' };
        writeln!(out, "{} {} {s}", e.u, e.v).unwrap();
    }
    out
}

/// Weights are kept as written; canonicalisation needs `k` and is left to
/// the caller.
pub fn read_swg(text: &str) -> Result<WeightedSignedGraph, FormatError> {
    let (n, m, body) = header(text, "swg")?;
    body_count("edge", m, body.len())?;
    let mut h = WeightedSignedGraph::new(n);
    for (line, toks) in body {
        if toks.len() != 3 {
            return Err(err(line, "expected `u v w`"));
        }
        let u = vertex(line, toks[0], n)?;
        let v = vertex(line, toks[1], n)?;
        let w: i64 = num(line, toks[2], "weight")?;
        h.try_add_edge(u, v, w).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(h)
}

pub fn write_swg(h: &WeightedSignedGraph) -> String {
    let mut out = format!("swg {} {}\n", h.vertex_count(), h.edge_count());
    for e in h.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w).unwrap();
    }
    out
}

/// Reads a plane map. Rotation lines may come in any order but every vertex
/// needs exactly one; consistency of the rotation system itself is checked
/// when faces are traced.
pub fn read_pm(text: &str) -> Result<PlanarMap, FormatError> {
    let (n, m, body) = header(text, "pm")?;
    body_count("edge and rotation", m + n, body.len())?;
    let mut edges = Vec::with_capacity(m);
    for (line, toks) in &body[..m] {
        if toks.len() != 2 {
            return Err(err(*line, "expected `u v`"));
        }
        edges.push((vertex(*line, toks[0], n)?, vertex(*line, toks[1], n)?));
    }
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, toks) in &body[m..] {
        let line = *line;
        if toks[0] != "rot" || toks.len() < 2 {
            return Err(err(line, "expected `rot <v>: <edge ids>`"));
        }
        let v = vertex(line, toks[1].trim_end_matches(':'), n)?;
        let mut rest = &toks[2..];
        if !toks[1].ends_with(':') {
            if rest.first() != Some(&":") {
                return Err(err(line, "missing `:` after the vertex"));
            }
            rest = &rest[1..];
        }
        let ids = rest
            .iter()
            .map(|t| {
                let e: usize = num(line, t, "edge id")?;
                if e >= m {
                    return Err(err(line, format!("edge id {e} out of range for {m} edges")));
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rotation[v].replace(ids).is_some() {
            return Err(err(line, format!("second rotation for vertex {v}")));
        }
    }
    Ok(PlanarMap {
        n,
        edges,
        rotation: rotation.into_iter().map(Option::unwrap).collect(),
    })
}

pub fn write_pm(map: &PlanarMap) -> String {
    let mut out = format!("pm {} {}\n", map.n, map.edges.len());
    for &(u, v) in &map.edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (v, rot) in map.rotation.iter().enumerate() {
        write!(out, "rot {v}:").unwrap();
        for e in rot {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `labels <n> <m>` then one `<edge-id> <label-index>` line per edge, in
/// edge order; index `i < n` is `e_{i+1}` and `n` is `J`.
pub fn write_labels(n: usize, labels: &[SpcLabel]) -> String {
    let mut out = format!("labels {n} {}\n", labels.len());
    for (e, l) in labels.iter().enumerate() {
        writeln!(out, "{e} {}", l.index(n)).unwrap();
    }
    out
}

pub fn read_labels(text: &str) -> Result<(usize, Vec<SpcLabel>), FormatError> {
    let (n, m, body) = header(text, "labels")?;
    body_count("label", m, body.len())?;
    let mut out = Vec::with_capacity(m);
    for (i, (line, toks)) in body.into_iter().enumerate() {
        if toks.len() != 2 {
            return Err(err(line, "expected `<edge-id> <label-index>`"));
        }
        let e: usize = num(line, toks[0], "edge id")?;
        if e != i {
            return Err(err(line, format!("expected edge id {i}, got {e}")));
        }
        let l: usize = num(line, toks[1], "label index")?;
        if l > n {
            return Err(err(line, format!("label index {l} exceeds {n}")));
        }
        out.push(SpcLabel::from_index(l, n));
    }
    Ok((n, out))
}

/// One `color <edge-id> <label-index>` line per edge, in edge order.
pub fn write_coloring(c: &EdgeColoring) -> String {
    let mut out = String::new();
    for (e, col) in c.colors.iter().enumerate() {
        writeln!(out, "color {e} {col}").unwrap();
    }
    out
}

pub fn read_coloring(text: &str) -> Result<EdgeColoring, FormatError> {
    let mut colors = Vec::new();
    for (line, toks) in lines(text) {
        if toks.len() != 3 || toks[0] != "color" {
            return Err(err(line, "expected `color <edge-id> <label-index>`"));
        }
        let e: usize = num(line, toks[1], "edge id")?;
        if e != colors.len() {
            return Err(err(line, format!("expected edge id {}, got {e}", colors.len())));
        }
        colors.push(num(line, toks[2], "label index")?);
    }
    Ok(EdgeColoring { colors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use signed_bounds::edgecolor::octahedron_map;
    use signed_bounds::spc::spc_labelled;

    #[test]
    fn sg_with_comments_loops_and_parallels() {
        let text = "# a digon and a loop\nsg 2 3\n0 1 +\n0 1 -  # parallel\n\n1 1 -\n";
        let g = read_sg(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.edge(2).is_loop());
        assert_eq!(write_sg(&g), "sg 2 3\n0 1 +\n0 1 -\n1 1 -\n");
    }

    #[test]
    fn sg_errors_carry_line_numbers() {
        assert_eq!(
            read_sg("sg 2 1\n\n0 2 +\n"),
            Err(FormatError::Parse { line: 3, msg: "vertex 2 out of range for 2 vertices".into() })
        );
        assert!(matches!(read_sg("sg 2 1\n0 1 *\n"), Err(FormatError::Parse { line: 2, .. })));
        assert!(matches!(read_sg("sg 2 2\n0 1 +\n"), Err(FormatError::Count { expected: 2, found: 1, .. })));
        assert!(matches!(read_sg("swg 2 0\n"), Err(FormatError::Parse { line: 1, .. })));
        assert_eq!(read_sg("# nothing\n"), Err(FormatError::Empty));
    }

    #[test]
    fn swg_keeps_raw_weights() {
        let h = read_swg("swg 3 2\n0 1 -3\n1 2 2\n").unwrap();
        assert_eq!(h.edges()[0].w, -3);
        assert_eq!(write_swg(&h), "swg 3 2\n0 1 -3\n1 2 2\n");
        assert!(matches!(read_swg("swg 2 1\n0 1 0\n"), Err(FormatError::Parse { line: 2, .. })));
    }

    #[test]
    fn pm_round_trip() {
        let m = octahedron_map();
        let text = write_pm(&m);
        assert_eq!(read_pm(&text).unwrap(), m);
        let spaced = text.replace("rot 0:", "rot 0 :");
        assert_eq!(read_pm(&spaced).unwrap(), m);
        assert!(matches!(read_pm("pm 1 1\n0 0\nrot 0: 0 1\n"), Err(FormatError::Parse { line: 3, .. })));
        assert!(matches!(
            read_pm("pm 2 1\n0 1\nrot 0: 0\nrot 0: 0\n"),
            Err(FormatError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn labels_round_trip() {
        let (g, labels) = spc_labelled(3).unwrap();
        let text = write_labels(3, &labels);
        assert!(text.starts_with(&format!("labels 3 {}\n", g.edge_count())));
        assert_eq!(read_labels(&text).unwrap(), (3, labels));
    }

    #[test]
    fn coloring_round_trip() {
        let c = EdgeColoring { colors: vec![3, 0, 2, 1] };
        assert_eq!(write_coloring(&c), "color 0 3\ncolor 1 0\ncolor 2 2\ncolor 3 1\n");
        assert_eq!(read_coloring(&write_coloring(&c)).unwrap(), c);
        assert!(read_coloring("color 1 0\n").is_err());
    }

    proptest! {
        #[test]
        fn sg_text_round_trips(n in 1usize..7, raw in prop::collection::vec((0usize..7, 0usize..7, any::<bool>()), 0..15)) {
            let g = SignedGraph::from_edges(n, raw.iter().map(|&(u, v, s)| (u % n, v % n, Sign::from_negative(s)))).unwrap();
            let text = write_sg(&g);
            let back = read_sg(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_sg(&back), text);
        }

        #[test]
        fn swg_text_round_trips(n in 1usize..7, raw in prop::collection::vec((0usize..7, 0usize..7, -5i64..=5), 0..15)) {
            let h = WeightedSignedGraph::from_edges(
                n,
                raw.iter().filter(|e| e.2 != 0).map(|&(u, v, w)| (u % n, v % n, w)),
            ).unwrap();
            let back = read_swg(&write_swg(&h)).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
