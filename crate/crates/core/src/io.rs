//! Text formats.
//!
//! Edge lists hold one `u v [w]` record per line with integer node ids and
//! an optional positive integer weight (default 1). Lines starting with `#`
//! are comments, except that a SNAP-style `# Nodes: N` comment declares the
//! node count, which both admits isolated trailing nodes and bounds the ids.
//!
//! Label files hold one block id per line; the line number is the node id.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Ids in the file start at 1 instead of 0.
    pub one_based: bool,
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    parse_edge_list_with(reader, ParseOptions::default())
}

pub fn parse_edge_list_with<R: BufRead>(reader: R, opts: ParseOptions) -> Result<Graph> {
    let offset = u64::from(opts.one_based);
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = nodes_header(comment, lineno)? {
                declared = Some(n);
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `u v [w]`, found {} fields", tokens.len()),
            });
        }
        let mut id = |tok: &str| -> Result<usize> {
            let raw = parse_count(tok, lineno, "node id")?;
            if raw < offset {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("node id {raw} below the 1-based origin"),
                });
            }
            let v = (raw - offset) as usize;
            max_id = Some(max_id.map_or(v, |m| m.max(v)));
            Ok(v)
        };
        let u = id(tokens[0])?;
        let v = id(tokens[1])?;
        let w = match tokens.get(2) {
            Some(tok) => parse_count(tok, lineno, "weight")?,
            None => 1,
        };
        if w == 0 {
            return Err(Error::Parse {
                line: lineno,
                msg: "edge weight must be at least 1".into(),
            });
        }
        edges.push((u, v, w));
    }

    let n = match (declared, max_id) {
        (Some(n), Some(m)) if m >= n => return Err(Error::NodeOutOfRange { node: m, n }),
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Graph::from_edges(n, edges)
}

fn nodes_header(comment: &str, line: usize) -> Result<Option<usize>> {
    let comment = comment.trim();
    let Some(rest) = comment
        .strip_prefix("Nodes:")
        .or_else(|| comment.strip_prefix("nodes:"))
    else {
        return Ok(None);
    };
    let tok = rest.split_whitespace().next().unwrap_or("");
    Ok(Some(parse_count(tok, line, "node count")? as usize))
}

fn parse_count(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| {
        let msg = if tok.starts_with('-') && tok[1..].parse::<u64>().is_ok() {
            format!("negative {what} `{tok}`")
        } else if tok.parse::<f64>().is_ok() {
            format!("{what} `{tok}` is not a non-negative integer")
        } else {
            format!("malformed {what} `{tok}`")
        };
        Error::Parse { line, msg }
    })
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# Nodes: {} Edges: {}", g.node_count(), g.edges().len())?;
    for &(u, v, w) in g.edges() {
        if w == 1 {
            writeln!(out, "{u} {v}")?;
        } else {
            writeln!(out, "{u} {v} {w}")?;
        }
    }
    Ok(())
}

/// Reads one label per line. K is `max label + 1` unless given.
pub fn read_labels<R: BufRead>(reader: R, k: Option<usize>) -> Result<Partition> {
    let mut labels = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        labels.push(parse_count(t, idx + 1, "label")? as usize);
    }
    match k {
        Some(k) => Partition::new(k, labels),
        None => Partition::from_labels(labels),
    }
}

pub fn write_labels<W: Write>(p: &Partition, mut out: W) -> Result<()> {
    for &b in p.assignment() {
        writeln!(out, "{b}")?;
    }
    Ok(())
}
