//! How independent are popularity and influence?
//!
//! The correlator `kappa = N * sum_i rho(i) * rho*(i) - 1` is zero when the
//! two rankings are independent and grows toward `N - 1` when both put all
//! their mass on the same node. The joint histogram of `(log rho, log rho*)`
//! compared with the product of its marginals shows where any correlation
//! lives; nodes in the top fraction of both orderings form the critical set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum_by;
use crate::rank::RankVector;

pub const DEFAULT_BIN_WIDTH_DECADES: f64 = 0.25;
pub const DEFAULT_CRITICAL_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub kappa: f64,
    pub n: usize,
    /// Both input vectors converged.
    pub converged: bool,
}

/// Computes `kappa` for two rank vectors over the same nodes.
///
/// Evaluated as `N * sum_i (rho_i - 1/N) * (rho*_i - 1/N)`, which equals
/// the defining expression for unit-mass vectors, avoids the cancellation
/// in `N * sum - 1` when `|kappa| << 1`, and is exactly zero when either
/// vector is exactly uniform.
pub fn correlator(rho: &RankVector, rho_star: &RankVector) -> Result<CorrelationReport> {
    let kappa = kappa(&rho.rho, &rho_star.rho)?;
    Ok(CorrelationReport {
        kappa,
        n: rho.len(),
        converged: rho.converged && rho_star.converged,
    })
}

/// `kappa` on raw probability vectors.
pub fn kappa(rho: &[f64], rho_star: &[f64]) -> Result<f64> {
    if rho.len() != rho_star.len() {
        return Err(Error::SizeMismatch {
            left: rho.len(),
            right: rho_star.len(),
        });
    }
    let n = rho.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let u = 1.0 / n as f64;
    let s = pairwise_sum_by(n, |i| (rho[i] - u) * (rho_star[i] - u));
    Ok(n as f64 * s)
}

/// Counts over a uniform grid in `(log10 rho, log10 rho*)`.
///
/// Cell `(x, y)` covers `[(x_lo + x) w, (x_lo + x + 1) w)` on the first axis
/// and likewise on the second. Joint histograms hold integer counts; product
/// histograms hold real-valued expected counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointHistogram {
    pub bin_width: f64,
    /// Integer index of the first bin on each axis.
    pub x_lo: i64,
    pub y_lo: i64,
    pub nx: usize,
    pub ny: usize,
    /// Row-major `nx * ny` cells.
    pub cells: Vec<f64>,
    pub marginal_x: Vec<f64>,
    pub marginal_y: Vec<f64>,
    pub n: usize,
}

impl JointHistogram {
    pub fn cell(&self, x: usize, y: usize) -> f64 {
        self.cells[x * self.ny + y]
    }

    /// Lower edges (in log10 units) of the first-axis bins, plus the final
    /// upper edge.
    pub fn x_edges(&self) -> Vec<f64> {
        (0..=self.nx)
            .map(|i| (self.x_lo + i as i64) as f64 * self.bin_width)
            .collect()
    }

    pub fn y_edges(&self) -> Vec<f64> {
        (0..=self.ny)
            .map(|i| (self.y_lo + i as i64) as f64 * self.bin_width)
            .collect()
    }

    pub fn total(&self) -> f64 {
        pairwise_sum_by(self.cells.len(), |i| self.cells[i])
    }

    /// Populated cells as `((x, y), value)`.
    pub fn populated(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| ((i / self.ny, i % self.ny), v))
    }
}

fn log_bin(v: f64, width: f64) -> i64 {
    (v.log10() / width).floor() as i64
}

/// Places every node in the cell of `(log10 rho, log10 rho*)`.
pub fn joint_histogram(
    rho: &RankVector,
    rho_star: &RankVector,
    bin_width_decades: f64,
) -> Result<JointHistogram> {
    if rho.len() != rho_star.len() {
        return Err(Error::SizeMismatch {
            left: rho.len(),
            right: rho_star.len(),
        });
    }
    if rho.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(bin_width_decades > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bin width must be positive, got {bin_width_decades}"
        )));
    }
    if rho.rho.iter().chain(&rho_star.rho).any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidParameter(
            "rank vectors must be strictly positive".into(),
        ));
    }
    let keys: Vec<(i64, i64)> = rho
        .rho
        .iter()
        .zip(&rho_star.rho)
        .map(|(&a, &b)| (log_bin(a, bin_width_decades), log_bin(b, bin_width_decades)))
        .collect();
    let x_lo = keys.iter().map(|k| k.0).min().expect("non-empty");
    let x_hi = keys.iter().map(|k| k.0).max().expect("non-empty");
    let y_lo = keys.iter().map(|k| k.1).min().expect("non-empty");
    let y_hi = keys.iter().map(|k| k.1).max().expect("non-empty");
    let nx = (x_hi - x_lo + 1) as usize;
    let ny = (y_hi - y_lo + 1) as usize;
    let mut cells = vec![0.0; nx * ny];
    let mut marginal_x = vec![0.0; nx];
    let mut marginal_y = vec![0.0; ny];
    for (kx, ky) in keys {
        let x = (kx - x_lo) as usize;
        let y = (ky - y_lo) as usize;
        cells[x * ny + y] += 1.0;
        marginal_x[x] += 1.0;
        marginal_y[y] += 1.0;
    }
    Ok(JointHistogram {
        bin_width: bin_width_decades,
        x_lo,
        y_lo,
        nx,
        ny,
        cells,
        marginal_x,
        marginal_y,
        n: rho.len(),
    })
}

/// Histogram expected if the two coordinates were independent:
/// `cell(x, y) = marginal_x(x) * marginal_y(y) / N`. Marginals are carried
/// over unchanged.
pub fn product_histogram(h: &JointHistogram) -> JointHistogram {
    let n = h.n as f64;
    let mut cells = vec![0.0; h.nx * h.ny];
    for x in 0..h.nx {
        for y in 0..h.ny {
            cells[x * h.ny + y] = h.marginal_x[x] * h.marginal_y[y] / n;
        }
    }
    JointHistogram { cells, ..h.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalMember {
    pub node: usize,
    /// 1-based popularity rank.
    pub k: usize,
    /// 1-based influence rank.
    pub k_star: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub threshold_fraction: f64,
    /// `ceil(threshold_fraction * N)`.
    pub cutoff: usize,
    /// Sorted by `k + k_star`, then node id.
    pub members: Vec<CriticalMember>,
}

/// Nodes ranked in the top `ceil(f N)` of both orderings.
pub fn critical_set(
    rho: &RankVector,
    rho_star: &RankVector,
    threshold_fraction: f64,
) -> Result<CriticalSet> {
    if rho.len() != rho_star.len() {
        return Err(Error::SizeMismatch {
            left: rho.len(),
            right: rho_star.len(),
        });
    }
    if !(threshold_fraction > 0.0 && threshold_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold fraction must lie in (0, 1], got {threshold_fraction}"
        )));
    }
    let n = rho.len();
    let cutoff = ((threshold_fraction * n as f64).ceil() as usize).min(n);
    let pos = rho.positions();
    let pos_star = rho_star.positions();
    let top: BTreeSet<usize> = rho.order[..cutoff].iter().copied().collect();
    let mut members: Vec<CriticalMember> = rho_star.order[..cutoff]
        .iter()
        .copied()
        .filter(|node| top.contains(node))
        .map(|node| CriticalMember {
            node,
            k: pos[node],
            k_star: pos_star[node],
        })
        .collect();
    members.sort_by_key(|m| (m.k + m.k_star, m.node));
    Ok(CriticalSet {
        threshold_fraction,
        cutoff,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::RankDirection;

    fn rv(rho: Vec<f64>) -> RankVector {
        RankVector::from_rho(rho, RankDirection::Popularity)
    }

    #[test]
    fn uniform_gives_zero_exactly() {
        for n in [1, 3, 7, 49, 1000] {
            let u = rv(vec![1.0 / n as f64; n]);
            let other: Vec<f64> = (1..=n).map(|i| i as f64).collect();
            let z: f64 = other.iter().sum();
            let other = rv(other.into_iter().map(|v| v / z).collect());
            assert_eq!(correlator(&u, &u).unwrap().kappa, 0.0);
            assert_eq!(correlator(&u, &other).unwrap().kappa, 0.0);
            assert_eq!(correlator(&other, &u).unwrap().kappa, 0.0);
        }
    }

    #[test]
    fn point_mass_gives_n_minus_one() {
        for n in [2, 10, 1000] {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            let k = kappa(&v, &v).unwrap();
            assert!((k - (n as f64 - 1.0)).abs() < 1e-12 * n as f64);
        }
    }

    #[test]
    fn size_mismatch() {
        assert!(kappa(&[0.5, 0.5], &[1.0]).is_err());
    }

    #[test]
    fn identical_pairs_share_a_cell() {
        let a = rv(vec![0.25, 0.25, 0.5]);
        let h = joint_histogram(&a, &a, 0.25).unwrap();
        assert_eq!(h.total(), 3.0);
        let max = h.cells.iter().cloned().fold(0.0, f64::max);
        assert_eq!(max, 2.0);
    }

    #[test]
    fn uniform_single_cell() {
        let a = rv(vec![0.1; 10]);
        let h = joint_histogram(&a, &a, 0.25).unwrap();
        assert_eq!((h.nx, h.ny), (1, 1));
        assert_eq!(h.cells, vec![10.0]);
        assert_eq!(product_histogram(&h).cells, vec![10.0]);
    }

    #[test]
    fn diagonal_product_spreads() {
        // Two groups on the diagonal, one decade apart.
        let mut v = vec![0.01; 5];
        v.extend(vec![0.1; 5]);
        let a = rv(v);
        let h = joint_histogram(&a, &a, 1.0).unwrap();
        assert_eq!((h.nx, h.ny), (2, 2));
        assert_eq!(h.cells, vec![5.0, 0.0, 0.0, 5.0]);
        let p = product_histogram(&h);
        assert_eq!(p.cells, vec![2.5; 4]);
        assert_eq!(p.marginal_x, h.marginal_x);
        assert_eq!(product_histogram(&p), p);
    }

    #[test]
    fn rejects_nonpositive() {
        let a = rv(vec![0.0, 1.0]);
        assert!(joint_histogram(&a, &a, 0.25).is_err());
    }

    #[test]
    fn critical_members() {
        let pop = rv(vec![0.4, 0.3, 0.2, 0.1]);
        let inf = rv(vec![0.1, 0.35, 0.4, 0.15]);
        let c = critical_set(&pop, &inf, 0.5).unwrap();
        assert_eq!(c.cutoff, 2);
        assert_eq!(
            c.members,
            vec![CriticalMember {
                node: 1,
                k: 2,
                k_star: 2
            }]
        );
        let all = critical_set(&pop, &inf, 1.0).unwrap();
        assert_eq!(all.members.len(), 4);
        assert!(critical_set(&pop, &inf, 0.0).is_err());
    }
}
