//! Group files.
//!
//! ```text
//! group <gid> <deterministic|independent|leaky eps=<float>>
//! member <gid> <node> [q=<float>]
//! ```
//!
//! Members keep file order, which is the layer order for leaky groups.
//! `q=` is only meaningful for independent groups and defaults to 1.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{Group, GroupId, Policy};
use crate::error::{Error, Result};
use crate::graph::NodeId;

enum Kind {
    Deterministic,
    Independent,
    Leaky(f64),
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::parse(line, format!("cannot parse {what} from {tok:?}")))
}

fn keyed(tok: &str, key: &str, line: usize) -> Result<f64> {
    let value = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=<float>, got {tok:?}")))?;
    value.parse().map_err(|_| Error::parse(line, format!("cannot parse {key} from {value:?}")))
}

pub fn parse_groups(text: &str) -> Result<Vec<Group>> {
    let mut kinds: BTreeMap<GroupId, (usize, Kind)> = BTreeMap::new();
    let mut members: BTreeMap<GroupId, Vec<(NodeId, Option<f64>)>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        match toks.next().unwrap() {
            "group" => {
                let gid: GroupId = number(toks.next(), line, "group id")?;
                let kind = match toks.next() {
                    Some("deterministic") => Kind::Deterministic,
                    Some("independent") => Kind::Independent,
                    Some("leaky") => {
                        let tok = toks.next().ok_or_else(|| Error::parse(line, "leaky groups need eps=<float>"))?;
                        Kind::Leaky(keyed(tok, "eps", line)?)
                    }
                    other => return Err(Error::parse(line, format!("unknown policy {other:?}"))),
                };
                if kinds.insert(gid, (line, kind)).is_some() {
                    return Err(Error::parse(line, format!("group {gid} declared twice")));
                }
            }
            "member" => {
                let gid: GroupId = number(toks.next(), line, "group id")?;
                let node: NodeId = number(toks.next(), line, "node id")?;
                let q = toks.next().map(|t| keyed(t, "q", line)).transpose()?;
                match kinds.get(&gid) {
                    None => return Err(Error::parse(line, format!("member of undeclared group {gid}"))),
                    Some((_, Kind::Independent)) => {}
                    Some(_) if q.is_some() => {
                        return Err(Error::parse(line, format!("q= given for non-independent group {gid}")))
                    }
                    Some(_) => {}
                }
                if let Some(q) = q {
                    if !(0.0..=1.0).contains(&q) {
                        return Err(Error::InvalidProbability {
                            value: q,
                            context: format!("line {line}: acceptance"),
                        });
                    }
                }
                members.entry(gid).or_default().push((node, q));
            }
            other => return Err(Error::parse(line, format!("unknown record {other:?}"))),
        }
        if let Some(extra) = toks.next() {
            return Err(Error::parse(line, format!("unexpected token {extra:?}")));
        }
    }
    kinds
        .into_iter()
        .map(|(gid, (line, kind))| {
            let list = members.remove(&gid).unwrap_or_default();
            let nodes: Vec<NodeId> = list.iter().map(|m| m.0).collect();
            let policy = match kind {
                Kind::Deterministic => Policy::Deterministic,
                Kind::Independent => Policy::Independent { q: list.iter().map(|m| m.1.unwrap_or(1.0)).collect() },
                Kind::Leaky(eps) => Policy::LeakyChain { eps },
            };
            Group::new(gid, nodes, policy).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

pub fn write_groups(groups: &[Group]) -> String {
    let mut out = String::new();
    for g in groups {
        match g.policy() {
            Policy::Deterministic => writeln!(out, "group {} deterministic", g.id()).unwrap(),
            Policy::Independent { .. } => writeln!(out, "group {} independent", g.id()).unwrap(),
            Policy::LeakyChain { eps } => writeln!(out, "group {} leaky eps={eps}", g.id()).unwrap(),
        }
        for (i, &u) in g.members().iter().enumerate() {
            match g.policy() {
                Policy::Independent { q } => writeln!(out, "member {} {u} q={}", g.id(), q[i]).unwrap(),
                _ => writeln!(out, "member {} {u}", g.id()).unwrap(),
            }
        }
    }
    out
}

pub fn load_groups(path: impl AsRef<Path>) -> Result<Vec<Group>> {
    parse_groups(&std::fs::read_to_string(path)?)
}

pub fn save_groups(groups: &[Group], path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_groups(groups))?;
    Ok(())
}
