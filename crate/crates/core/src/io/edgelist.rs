use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CallGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeFormat {
    /// `src_id dst_id`, non-negative integers; `N = max_id + 1`.
    #[default]
    Plain,
    /// `src_name dst_name`; nodes numbered by first appearance.
    Named,
}

/// Reads a whitespace-separated directed edge list. Blank lines and lines
/// starting with `#` are skipped; repeated edges add up.
pub fn load_edge_list(path: &Path, format: EdgeFormat) -> Result<CallGraph> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(std::io::BufReader::new(file), path, format)
}

/// [`load_edge_list`] over any reader; `path` labels errors.
pub fn read_edge_list(reader: impl BufRead, path: &Path, format: EdgeFormat) -> Result<CallGraph> {
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut max_id: Option<usize> = None;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected 2 fields, found {}", fields.len()),
            ));
        }
        match format {
            EdgeFormat::Plain => {
                let mut pair = [0usize; 2];
                for (slot, field) in pair.iter_mut().zip(&fields) {
                    *slot = field.parse().map_err(|_| {
                        Error::parse(
                            path,
                            lineno,
                            format!("'{field}' is not a non-negative integer id"),
                        )
                    })?;
                }
                max_id = Some(max_id.unwrap_or(0).max(pair[0]).max(pair[1]));
                edges.push((pair[0], pair[1], 1));
            }
            EdgeFormat::Named => {
                let mut pair = [0usize; 2];
                for (slot, field) in pair.iter_mut().zip(&fields) {
                    *slot = *ids.entry(field.to_string()).or_insert_with(|| {
                        names.push(field.to_string());
                        names.len() - 1
                    });
                }
                edges.push((pair[0], pair[1], 1));
            }
        }
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    match format {
        EdgeFormat::Plain => {
            let n = max_id.map_or(0, |m| m + 1);
            CallGraph::with_numeric_names(n, edges)
        }
        EdgeFormat::Named => CallGraph::from_edges(names, edges),
    }
}
