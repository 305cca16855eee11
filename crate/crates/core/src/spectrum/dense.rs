use crate::error::{Error, Result};
use crate::rank::StochasticOperator;

pub const DEFAULT_DENSE_LIMIT: usize = 4000;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch {
                left: bad.len(),
                right: n,
            });
        }
        Ok(DenseMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Materializes `G = alpha * S + (1 - alpha) / N`, dangling columns
/// becoming `1/N` throughout.
pub fn densify_google(
    s: &StochasticOperator,
    alpha: f64,
    dense_limit: usize,
) -> Result<DenseMatrix> {
    let n = s.n();
    if n > dense_limit {
        return Err(Error::DenseLimit {
            n,
            limit: dense_limit,
        });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let teleport = (1.0 - alpha) / n as f64;
    let uniform = 1.0 / n as f64;
    let mut g = DenseMatrix::zeros(n);
    for j in 0..n {
        if s.is_dangling(j) {
            for i in 0..n {
                g.set(i, j, uniform);
            }
            continue;
        }
        for i in 0..n {
            g.set(i, j, teleport);
        }
        for (i, w) in s.column(j) {
            g.set(i, j, alpha * w + teleport);
        }
    }
    Ok(g)
}
