//! Complex eigenvalue spectrum of the Google matrix.
//!
//! `G` has the eigenvalue 1 (its PageRank mode) and every other eigenvalue
//! has modulus at most `alpha`. How many modes sit well away from zero says
//! how much slow, community-like structure the network carries.
//!
//! The full spectrum is computed densely ([`google_spectrum`]) up to a size
//! cap; beyond it, [`arnoldi_spectrum`] finds the largest-modulus part.

mod arnoldi;
mod dense;
pub mod eigen;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use arnoldi::{arnoldi_eigenvalues, ArnoldiOutcome, ArnoldiParams, DEFAULT_ARNOLDI_K};
pub use dense::{densify_google, DenseMatrix, DEFAULT_DENSE_LIMIT};

use crate::error::Result;
use crate::rank::StochasticOperator;

pub const DEFAULT_RADIUS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethod {
    #[default]
    Dense,
    Arnoldi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdStat {
    pub radius: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// Sorted by descending modulus, then descending real and imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Matrix size. With the Arnoldi method only the leading part of the
    /// spectrum is present.
    pub n: usize,
    pub alpha: Option<f64>,
    pub method: SpectrumMethod,
    /// Some eigenvalue did not converge; see `unconverged`.
    pub partial: bool,
    /// Indices into `eigenvalues`.
    pub unconverged: Vec<usize>,
    pub threshold_stats: Vec<ThresholdStat>,
}

impl SpectrumResult {
    fn new(
        values: Vec<Complex64>,
        flagged: &[usize],
        n: usize,
        alpha: Option<f64>,
        method: SpectrumMethod,
    ) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| by_modulus(&values[a], &values[b]));
        let eigenvalues = idx.iter().map(|&i| values[i]).collect();
        let mut unconverged: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|(_, i)| flagged.contains(i))
            .map(|(pos, _)| pos)
            .collect();
        unconverged.sort_unstable();
        SpectrumResult {
            eigenvalues,
            n,
            alpha,
            method,
            partial: !unconverged.is_empty(),
            unconverged,
            threshold_stats: Vec::new(),
        }
    }

    /// Fills `threshold_stats` for the given radii.
    pub fn with_thresholds(mut self, radii: &[f64]) -> Self {
        self.threshold_stats = radii
            .iter()
            .map(|&radius| ThresholdStat {
                radius,
                fraction: spectral_fraction(&self, radius),
            })
            .collect();
        self
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.norm()).collect()
    }
}

fn by_modulus(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then(b.re.total_cmp(&a.re))
        .then(b.im.total_cmp(&a.im))
}

/// All eigenvalues of a dense real matrix.
pub fn eigenvalues_dense(g: &DenseMatrix) -> SpectrumResult {
    let (values, flagged) = eigen::general_eigenvalues(g);
    SpectrumResult::new(values, &flagged, g.n(), None, SpectrumMethod::Dense)
}

/// Full spectrum of `G = alpha * S + (1 - alpha) / N`; fails above
/// `dense_limit` nodes.
pub fn google_spectrum(
    s: &StochasticOperator,
    alpha: f64,
    dense_limit: usize,
) -> Result<SpectrumResult> {
    let g = densify_google(s, alpha, dense_limit)?;
    let mut spec = eigenvalues_dense(&g);
    spec.alpha = Some(alpha);
    Ok(spec)
}

/// Largest-modulus part of the spectrum of `G`.
pub fn arnoldi_spectrum(
    s: &StochasticOperator,
    alpha: f64,
    params: &ArnoldiParams,
) -> Result<SpectrumResult> {
    let out = arnoldi_eigenvalues(s, alpha, params)?;
    Ok(SpectrumResult::new(
        out.eigenvalues,
        &out.unconverged,
        s.n(),
        Some(alpha),
        SpectrumMethod::Arnoldi,
    ))
}

/// `|{lambda : |lambda| > radius}| / n`, the unit mode included. For an
/// Arnoldi result this is a lower bound.
pub fn spectral_fraction(spec: &SpectrumResult, radius: f64) -> f64 {
    if spec.n == 0 {
        return 0.0;
    }
    let above = spec
        .eigenvalues
        .iter()
        .filter(|z| z.norm() > radius)
        .count();
    above as f64 / spec.n as f64
}
