//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! graph <n> <directed|undirected>
//! node <id> <utility>          (optional, utility defaults to 1)
//! seed <id>
//! edge <u> <v> <p> [collector]
//! ```
//!
//! In undirected files each `edge` line stands for both arcs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::{Arc, NodeId, ProbGraph};
use crate::error::{Error, Result};

pub fn load(path: impl AsRef<Path>) -> Result<ProbGraph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn save(g: &ProbGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write(g))?;
    Ok(())
}

/// Deterministic serialization: header, non-default utilities, seeds, then
/// edges, all in ascending id order.
pub fn write(g: &ProbGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    writeln!(out, "graph {} {}", g.n(), kind).unwrap();
    for (u, &a) in g.utilities().iter().enumerate() {
        if a != 1.0 {
            writeln!(out, "node {u} {a}").unwrap();
        }
    }
    for s in g.seeds() {
        writeln!(out, "seed {s}").unwrap();
    }
    for a in g.arcs() {
        if !g.is_directed() && a.src > a.dst {
            continue;
        }
        write!(out, "edge {} {} {}", a.src, a.dst, a.p).unwrap();
        if a.collector {
            out.push_str(" collector");
        }
        out.push('\n');
    }
    out
}

fn field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::parse(line, format!("cannot parse {what} from {tok:?}")))
}

pub fn parse(text: &str) -> Result<ProbGraph> {
    let mut header: Option<(usize, bool)> = None;
    let mut utilities: Vec<(usize, NodeId, f64)> = Vec::new();
    let mut seeds: Vec<(usize, NodeId)> = Vec::new();
    let mut arcs: Vec<(usize, Arc)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap();
        if keyword != "graph" && header.is_none() {
            return Err(Error::parse(line, "expected `graph <n> <directed|undirected>` first"));
        }
        match keyword {
            "graph" => {
                if header.is_some() {
                    return Err(Error::parse(line, "duplicate graph header"));
                }
                let n: usize = field(toks.next(), line, "node count")?;
                let directed = match toks.next() {
                    Some("directed") => true,
                    Some("undirected") => false,
                    other => return Err(Error::parse(line, format!("expected directed|undirected, got {other:?}"))),
                };
                header = Some((n, directed));
            }
            "node" => {
                let u = field(toks.next(), line, "node id")?;
                let a: f64 = field(toks.next(), line, "utility")?;
                utilities.push((line, u, a));
            }
            "seed" => seeds.push((line, field(toks.next(), line, "seed id")?)),
            "edge" => {
                let src = field(toks.next(), line, "source")?;
                let dst = field(toks.next(), line, "target")?;
                let p: f64 = field(toks.next(), line, "probability")?;
                let collector = match toks.next() {
                    None => false,
                    Some("collector") => true,
                    Some(other) => return Err(Error::parse(line, format!("unexpected token {other:?}"))),
                };
                arcs.push((line, Arc { src, dst, p, collector }));
            }
            other => return Err(Error::parse(line, format!("unknown record {other:?}"))),
        }
        if keyword != "edge" {
            if let Some(extra) = toks.next() {
                return Err(Error::parse(line, format!("unexpected token {extra:?}")));
            }
        }
    }

    let (n, directed) = header.ok_or_else(|| Error::parse(1, "missing graph header"))?;
    let check_node = |line: usize, u: NodeId| {
        if u >= n {
            Err(Error::parse(line, format!("node {u} outside 0..{n}")))
        } else {
            Ok(())
        }
    };

    let mut b = ProbGraph::builder(n, directed);
    for (line, u, a) in utilities {
        check_node(line, u)?;
        if !a.is_finite() || a < 0.0 {
            return Err(Error::parse(line, format!("utility {a} must be finite and non-negative")));
        }
        b.utility(u, a);
    }
    for (line, s) in seeds {
        check_node(line, s)?;
        b.seed(s);
    }
    let mut seen: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    for (line, a) in arcs {
        check_node(line, a.src)?;
        check_node(line, a.dst)?;
        if !(0.0..=1.0).contains(&a.p) {
            return Err(Error::InvalidProbability {
                value: a.p,
                context: format!("line {line}: edge {} {}", a.src, a.dst),
            });
        }
        if a.src == a.dst {
            return Err(Error::parse(line, format!("self-loop on node {}", a.src)));
        }
        let mut keys = vec![(a.src, a.dst)];
        if !directed {
            keys.push((a.dst, a.src));
        }
        for key in keys {
            if let Some(prev) = seen.insert(key, line) {
                return Err(Error::parse(line, format!("duplicate edge {} {} (first on line {prev})", key.0, key.1)));
            }
        }
        b.arc(a);
        if !directed {
            b.arc(Arc { src: a.dst, dst: a.src, ..a });
        }
    }
    b.build()
}
