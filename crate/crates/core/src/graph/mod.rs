//! Directed call multigraph and its degree statistics.

mod degree;
pub mod generators;
mod powerlaw;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use degree::{degree_sequence, Counting, Direction};
pub use powerlaw::{
    fit_power_law, log_binned_counts, log_binned_histogram, log_binned_weights, DegreeHistogram,
    FitRange, HistBin, PowerLawFit, DEFAULT_BINS_PER_DECADE,
};

/// Directed multigraph: `names[i]` labels node `i`, and each distinct
/// `(src, dst)` pair carries a multiplicity >= 1.
///
/// Edges are kept sorted by `(src, dst)` so equal graphs compare and
/// serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallGraph {
    names: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub multiplicity: u64,
}

impl CallGraph {
    /// Builds a graph, merging repeated `(src, dst)` pairs by adding their
    /// multiplicities.
    pub fn from_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = HashSet::with_capacity(n);
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate node name '{name}'")));
            }
        }
        let mut acc: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (src, dst, m) in edges {
            if src >= n || dst >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {src} -> {dst} out of range for {n} nodes"
                )));
            }
            if m == 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge {src} -> {dst} has zero multiplicity"
                )));
            }
            *acc.entry((src, dst)).or_insert(0) += m;
        }
        let edges = acc
            .into_iter()
            .map(|((src, dst), multiplicity)| Edge {
                src,
                dst,
                multiplicity,
            })
            .collect();
        Ok(CallGraph { names, edges })
    }

    /// Nodes labelled `"0"`, `"1"`, ...
    pub fn with_numeric_names(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, node: usize) -> &str {
        &self.names[node]
    }

    pub fn node_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Distinct edges, sorted by `(src, dst)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn multiplicity(&self, src: usize, dst: usize) -> u64 {
        self.edges
            .binary_search_by(|e| (e.src, e.dst).cmp(&(src, dst)))
            .map(|i| self.edges[i].multiplicity)
            .unwrap_or(0)
    }

    /// Sum of multiplicities: the total number of resolved calls.
    pub fn total_calls(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    /// Same nodes, every edge flipped.
    pub fn reversed(&self) -> CallGraph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                src: e.dst,
                dst: e.src,
                multiplicity: e.multiplicity,
            })
            .collect();
        edges.sort_unstable();
        CallGraph {
            names: self.names.clone(),
            edges,
        }
    }

    /// Drops self-loops.
    pub fn without_self_loops(&self) -> CallGraph {
        CallGraph {
            names: self.names.clone(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| e.src != e.dst)
                .collect(),
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<CallGraph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::SizeMismatch {
                left: perm.len(),
                right: n,
            });
        }
        let mut names = vec![String::new(); n];
        for (i, name) in self.names.iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        CallGraph::from_edges(
            names,
            self.edges
                .iter()
                .map(|e| (perm[e.src], perm[e.dst], e.multiplicity)),
        )
    }
}
