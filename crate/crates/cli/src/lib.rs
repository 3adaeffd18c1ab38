//! The `sbound` command line: file formats and subcommand dispatch.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for unreadable input or a violated precondition.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use signed_bounds::bounds::{
    build_distance_graph, check_bound, enumerate_wide_cliques, map_partial_ttree, BoundVerdict, Certificate,
};
use signed_bounds::edgecolor::edge_color;
use signed_bounds::signed::{
    contains_ok_element, find_homomorphism, is_switching_equivalent, negative_girth, GraphError, SignedGraph,
};
use signed_bounds::spc::{edc, spc_labelled};
use signed_bounds::ttree::recognize_partial_ttree;
use signed_bounds::weighted::{barbar_expand, is_2k_wide, WeightedSignedGraph};

#[derive(Debug, Parser)]
#[command(name = "sbound", version, about = "Homomorphism bounds for signed bipartite partial t-trees")]
pub struct Cli {
    /// Worker threads for the data-parallel clique rounds (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length of a shortest negative cycle.
    NegGirth { file: PathBuf },
    /// Whether two signed graphs on the same multigraph are switching equivalent.
    SwitchEquiv { a: PathBuf, b: PathBuf },
    /// Whether a weighted signed graph is 2k-wide.
    Wide {
        #[arg(long)]
        k: i64,
        file: PathBuf,
    },
    /// Replaces every weighted edge by a path realising its weight.
    Expand {
        #[arg(long)]
        k: i64,
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Signed projective cube SPC(n), with edge labels next to the output.
    Spc {
        n: usize,
        #[arg(short)]
        o: PathBuf,
    },
    /// Signed double cover of the underlying graph.
    Edc {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Lists the 2k-wide bipartite weighted (t+1)-cliques up to isomorphism.
    ListCliques {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: i64,
    },
    /// Decides whether B bounds all signed bipartite partial t-trees of
    /// negative girth at least 2k. Writes a certificate (JSON) or a
    /// counterexample (.sg) to -o.
    CheckBound {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: i64,
        base: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
        /// Also write the pruning rounds as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Maps a partial t-tree into B using a certificate.
    Map {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: i64,
        graph: PathBuf,
        base: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Exhaustive homomorphism search.
    Hom { graph: PathBuf, base: PathBuf },
    /// Colours the edges of a 2k-regular plane multigraph with 2k colours.
    EdgeColor {
        #[arg(long)]
        k: i64,
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Looks for a cycle that does not map to the negative K-cycle: a
    /// positive odd cycle, or a negative cycle shorter than K or of the other
    /// parity. Here K is a cycle length, not half of one. Exit 0 when there
    /// is none.
    ContainsOk {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
}

/// Outcome of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_sg(path: &Path) -> Result<SignedGraph> {
    format::read_sg(&read(path)?).with_context(|| path.display().to_string())
}

/// Reads a .swg file and canonicalises its weights, warning on rewrites.
fn load_swg(path: &Path, k: i64, err: &mut dyn Write) -> Result<WeightedSignedGraph> {
    let raw = format::read_swg(&read(path)?).with_context(|| path.display().to_string())?;
    let (h, rewritten) = raw.canonicalized(k)?;
    if rewritten > 0 {
        writeln!(err, "warning: {}: {rewritten} weight(s) rewritten to canonical form", path.display())?;
    }
    Ok(h)
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes to `path` if given, otherwise to `out`.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Runs one command; human-readable results go to `out`, warnings to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Verdict> {
    match &cli.command {
        Command::NegGirth { file } => {
            let g = load_sg(file)?;
            match negative_girth(&g) {
                Some(l) => {
                    writeln!(out, "negative girth {l}")?;
                    Ok(Verdict::Yes)
                }
                None => {
                    writeln!(out, "balanced: no negative cycle")?;
                    Ok(Verdict::No)
                }
            }
        }
        Command::SwitchEquiv { a, b } => {
            let (ga, gb) = (load_sg(a)?, load_sg(b)?);
            match is_switching_equivalent(&ga, &gb) {
                Ok(Some(s)) => {
                    let flipped: Vec<usize> = (0..s.len()).filter(|&v| s.0[v]).collect();
                    writeln!(out, "equivalent; switch at {flipped:?}")?;
                    Ok(Verdict::Yes)
                }
                Ok(None) => {
                    writeln!(out, "not equivalent: some cycle has different signs")?;
                    Ok(Verdict::No)
                }
                Err(e @ GraphError::DifferentUnderlying(_)) => {
                    writeln!(out, "not equivalent: {e}")?;
                    Ok(Verdict::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Wide { k, file } => {
            let h = load_swg(file, *k, err)?;
            let wide = is_2k_wide(&h, *k)?;
            writeln!(out, "{}", if wide { "2k-wide" } else { "not 2k-wide" })?;
            Ok(Verdict::from_bool(wide))
        }
        Command::Expand { k, file, o } => {
            let h = load_swg(file, *k, err)?;
            write(o, &format::write_sg(&barbar_expand(&h, *k)?))?;
            Ok(Verdict::Yes)
        }
        Command::Spc { n, o } => {
            let (g, labels) = spc_labelled(*n)?;
            write(o, &format::write_sg(&g))?;
            write(&o.with_extension("labels"), &format::write_labels(*n, &labels))?;
            Ok(Verdict::Yes)
        }
        Command::Edc { file, o } => {
            let g = load_sg(file)?;
            write(o, &format::write_sg(&edc(&g)))?;
            Ok(Verdict::Yes)
        }
        Command::ListCliques { t, k } => {
            if *t < 1 || *k < 1 {
                bail!("t and k must be at least 1");
            }
            let l = enumerate_wide_cliques(*t, *k);
            writeln!(out, "# weights of pairs (0,1), (0,2), ..., ({}, {})", t - 1, t)?;
            for m in &l.members {
                let row: Vec<String> = m.iter().map(i64::to_string).collect();
                writeln!(out, "{}", row.join(" "))?;
            }
            writeln!(out, "count {}", l.len())?;
            Ok(Verdict::Yes)
        }
        Command::CheckBound { t, k, base, o, trace } => {
            let b = load_sg(base)?;
            let verdict = check_bound(&b, *t, *k)?;
            let tr = match &verdict {
                BoundVerdict::Yes { certificate, trace } => {
                    writeln!(out, "YES: {} closed cliques", certificate.len())?;
                    if let Some(path) = o {
                        let d = build_distance_graph(&b, *k)?;
                        let cert = Certificate::from_clique_set(&d, certificate, Some(base.display().to_string()));
                        write(path, &json(&cert)?)?;
                    }
                    trace
                }
                BoundVerdict::No { counterexample, trace } => {
                    let oracle = match counterexample.oracle_verified {
                        Some(true) => "no homomorphism, checked exhaustively",
                        Some(false) => "exhaustive check found a homomorphism",
                        None => "too large for the exhaustive check",
                    };
                    writeln!(
                        out,
                        "NO: counterexample on {} vertices, {} edges ({oracle})",
                        counterexample.graph.vertex_count(),
                        counterexample.graph.edge_count()
                    )?;
                    if let Some(path) = o {
                        write(path, &format::write_sg(&counterexample.graph))?;
                    }
                    trace
                }
            };
            if let Some(path) = trace {
                write(path, &json(tr)?)?;
            }
            Ok(Verdict::from_bool(verdict.is_yes()))
        }
        Command::Map { t, k, graph, base, certificate, o } => {
            let g = load_sg(graph)?;
            let b = load_sg(base)?;
            let cert: Certificate = serde_json::from_str(&read(certificate)?)
                .with_context(|| format!("{}: malformed certificate", certificate.display()))?;
            if cert.t != *t {
                bail!("certificate is for t={}, not t={t}", cert.t);
            }
            let d = build_distance_graph(&b, *k)?;
            let w = cert.to_clique_set(&d)?;
            let Some(seq) = recognize_partial_ttree(&g, *t)? else {
                bail!("{} is not a partial {t}-tree", graph.display());
            };
            let f = map_partial_ttree(&g, &seq, &d, &w)?;
            emit(o.as_deref(), &json(&f)?, out)?;
            Ok(Verdict::Yes)
        }
        Command::Hom { graph, base } => {
            let (g, b) = (load_sg(graph)?, load_sg(base)?);
            match find_homomorphism(&g, &b) {
                Some(f) => {
                    out.write_all(json(&f)?.as_bytes())?;
                    Ok(Verdict::Yes)
                }
                None => {
                    writeln!(out, "no homomorphism")?;
                    Ok(Verdict::No)
                }
            }
        }
        Command::EdgeColor { k, file, o } => {
            let map = format::read_pm(&read(file)?).with_context(|| file.display().to_string())?;
            let c = edge_color(&map, *k)?;
            emit(o.as_deref(), &format::write_coloring(&c), out)?;
            Ok(Verdict::Yes)
        }
        Command::ContainsOk { k, file } => {
            if *k < 1 {
                bail!("k must be at least 1");
            }
            let g = load_sg(file)?;
            match contains_ok_element(&g, *k) {
                Some(c) => {
                    writeln!(out, "contains {:?} cycle of length {} through {:?}", c.sign, c.len(), c.vertices)?;
                    Ok(Verdict::No)
                }
                None => {
                    writeln!(out, "free of short cycles of the forbidden kinds")?;
                    Ok(Verdict::Yes)
                }
            }
        }
    }
}
