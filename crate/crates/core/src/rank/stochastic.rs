use serde::{Deserialize, Serialize};

use crate::graph::CallGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkDirection {
    /// Column `j` holds the callees of `j`.
    #[default]
    Forward,
    /// Column `j` holds the callers of `j`.
    Reversed,
}

/// How a column distributes probability over its links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// Every distinct neighbour equally likely.
    #[default]
    Distinct,
    /// Proportional to call multiplicity.
    Multiplicity,
}

/// Sparse column-stochastic matrix in compressed-column form.
///
/// Every non-dangling column sums to one; dangling columns are empty here
/// and stand for the uniform column `1/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticOperator {
    n: usize,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    weights: Vec<f64>,
    dangling: Vec<usize>,
    link_direction: LinkDirection,
    weighting: Weighting,
}

impl StochasticOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    /// `(row, weight)` pairs of column `j`, rows ascending.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.col_ptr[j]..self.col_ptr[j + 1];
        self.rows[r.clone()]
            .iter()
            .copied()
            .zip(self.weights[r].iter().copied())
    }

    /// Dangling columns, ascending.
    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    pub fn is_dangling(&self, j: usize) -> bool {
        self.col_ptr[j] == self.col_ptr[j + 1]
    }

    pub fn link_direction(&self) -> LinkDirection {
        self.link_direction
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    /// `y = S_sparse * x`, dangling columns contributing nothing.
    pub fn mul_sparse(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for j in 0..self.n {
            let xj = x[j];
            if xj == 0.0 {
                continue;
            }
            for k in self.col_ptr[j]..self.col_ptr[j + 1] {
                y[self.rows[k]] += self.weights[k] * xj;
            }
        }
    }
}

/// Column-normalizes the adjacency of `g` (or of its transpose).
/// Self-loops stay in their own column like any other link.
pub fn build_stochastic(
    g: &CallGraph,
    link_direction: LinkDirection,
    weighting: Weighting,
) -> StochasticOperator {
    let oriented;
    let g = match link_direction {
        LinkDirection::Forward => g,
        LinkDirection::Reversed => {
            oriented = g.reversed();
            &oriented
        }
    };
    let n = g.node_count();
    let mut col_ptr = vec![0usize; n + 1];
    for e in g.edges() {
        col_ptr[e.src + 1] += 1;
    }
    for j in 0..n {
        col_ptr[j + 1] += col_ptr[j];
    }
    let nnz = g.edges().len();
    let mut rows = Vec::with_capacity(nnz);
    let mut weights = Vec::with_capacity(nnz);
    // Edges are sorted by (src, dst), so each column is contiguous.
    let edges = g.edges();
    for j in 0..n {
        let col = &edges[col_ptr[j]..col_ptr[j + 1]];
        let total: u64 = match weighting {
            Weighting::Distinct => col.len() as u64,
            Weighting::Multiplicity => col.iter().map(|e| e.multiplicity).sum(),
        };
        for e in col {
            let w = match weighting {
                Weighting::Distinct => 1.0 / total as f64,
                Weighting::Multiplicity => e.multiplicity as f64 / total as f64,
            };
            rows.push(e.dst);
            weights.push(w);
        }
    }
    let dangling = (0..n).filter(|&j| col_ptr[j] == col_ptr[j + 1]).collect();
    StochasticOperator {
        n,
        col_ptr,
        rows,
        weights,
        dangling,
        link_direction,
        weighting,
    }
}
