//! Text graph format:
//!
//! ```text
//! PCN v1 N=<n> E=<edge pairs>
//! <id> <name>          (n lines, ids 0..n in order)
//! <src> <dst> <mult>   (E lines, sorted by (src, dst))
//! ```

use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::CallGraph;

const MAGIC: &str = "PCN v1";

pub fn save_graph(g: &CallGraph, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_graph(g, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_graph(g: &CallGraph, w: &mut impl Write) -> std::io::Result<()> {
    if let Some(bad) = g
        .names()
        .iter()
        .find(|n| n.is_empty() || n.contains(['\n', '\r']))
    {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            format!("node name {bad:?} cannot be stored on one line"),
        ));
    }
    writeln!(w, "{MAGIC} N={} E={}", g.node_count(), g.edges().len())?;
    for (i, name) in g.names().iter().enumerate() {
        writeln!(w, "{i} {name}")?;
    }
    for e in g.edges() {
        writeln!(w, "{} {} {}", e.src, e.dst, e.multiplicity)?;
    }
    Ok(())
}

/// Serializes to a string; handy for byte-level comparisons.
pub fn graph_to_string(g: &CallGraph) -> Result<String> {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).map_err(|e| Error::InvalidGraph(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("names are utf-8"))
}

pub fn load_graph(path: &Path) -> Result<CallGraph> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_graph(std::io::BufReader::new(file), path)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix(MAGIC)?.strip_prefix(' ')?;
    let mut parts = rest.split(' ');
    let n = parts.next()?.strip_prefix("N=")?.parse().ok()?;
    let e = parts.next()?.strip_prefix("E=")?.parse().ok()?;
    parts.next().is_none().then_some((n, e))
}

/// Inverse of [`write_graph`].
pub fn read_graph(reader: impl BufRead, path: &Path) -> Result<CallGraph> {
    let mut lines = reader.lines();
    let mut lineno = 0usize;
    let mut next_line = |lineno: &mut usize| -> Result<Option<String>> {
        *lineno += 1;
        lines.next().transpose().map_err(|e| Error::io(path, e))
    };

    let header = next_line(&mut lineno)?.ok_or_else(|| Error::parse(path, 1, "missing header"))?;
    let (n, e) = parse_header(header.trim_end()).ok_or_else(|| {
        Error::parse(
            path,
            1,
            format!("expected '{MAGIC} N=<n> E=<e>', found '{header}'"),
        )
    })?;

    let mut names = Vec::with_capacity(n);
    for i in 0..n {
        let line = next_line(&mut lineno)?
            .ok_or_else(|| Error::parse(path, lineno, format!("truncated: expected node {i}")))?;
        let (id, name) = line
            .split_once(' ')
            .ok_or_else(|| Error::parse(path, lineno, "expected '<id> <name>'"))?;
        if id.parse::<usize>().ok() != Some(i) {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected node id {i}, found '{id}'"),
            ));
        }
        if name.is_empty() {
            return Err(Error::parse(path, lineno, "empty node name"));
        }
        names.push(name.to_string());
    }

    let mut edges = Vec::with_capacity(e);
    let mut prev: Option<(usize, usize)> = None;
    for k in 0..e {
        let line = next_line(&mut lineno)?
            .ok_or_else(|| Error::parse(path, lineno, format!("truncated: expected edge {k}")))?;
        let fields: Vec<&str> = line.split(' ').collect();
        let parsed: Option<Vec<u64>> = (fields.len() == 3)
            .then(|| fields.iter().map(|f| f.parse().ok()).collect())
            .flatten();
        let [src, dst, mult] = parsed
            .as_deref()
            .and_then(|v| <[u64; 3]>::try_from(v).ok())
            .ok_or_else(|| Error::parse(path, lineno, "expected '<src> <dst> <multiplicity>'"))?;
        let (src, dst) = (src as usize, dst as usize);
        if src >= n || dst >= n {
            return Err(Error::parse(
                path,
                lineno,
                format!("edge {src} -> {dst} references a node id >= N={n}"),
            ));
        }
        if mult == 0 {
            return Err(Error::parse(path, lineno, "zero multiplicity"));
        }
        if prev.is_some_and(|p| p >= (src, dst)) {
            return Err(Error::parse(
                path,
                lineno,
                "edges must be sorted and unique",
            ));
        }
        prev = Some((src, dst));
        edges.push((src, dst, mult));
    }
    if let Some(extra) = next_line(&mut lineno)? {
        if !extra.trim().is_empty() {
            return Err(Error::parse(
                path,
                lineno,
                "unexpected content after the last edge",
            ));
        }
    }
    CallGraph::from_edges(names, edges).map_err(|err| Error::parse(path, 1, err.to_string()))
}
