//! Log-binned histograms of integer-valued samples and straight-line fits
//! on log-log axes.
//!
//! Bin `k` covers `[10^(k/b), 10^((k+1)/b))` where `b` is the number of bins
//! per decade. Samples are integers, so a bin's width is the number of
//! integers it contains (the last populated bin is cut at the largest
//! observed value), and its center is the geometric mean of those integers.
//! With these conventions an exact discrete power law maps to a straight
//! line across the whole range, including the sparse first decade.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Counting, Direction};
use crate::error::{Error, Result};

pub const DEFAULT_BINS_PER_DECADE: u32 = 5;

/// Relative slack used when turning real bin edges into integer bounds.
const EDGE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistBin {
    /// Real edges `[lo, hi)`.
    pub lo: f64,
    pub hi: f64,
    /// Smallest and largest integer counted in this bin.
    pub first: u64,
    pub last: u64,
    pub center: f64,
    /// Fraction of all samples (or of total weight) in the bin.
    pub mass: f64,
    /// `mass / (last - first + 1)`.
    pub density: f64,
    /// Raw number of samples.
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub direction: Option<Direction>,
    pub counting: Option<Counting>,
    pub bins_per_decade: u32,
    /// Number of samples, zero-valued ones included.
    pub total: u64,
    pub zero_count: u64,
    pub zero_mass: f64,
    /// Populated bins only, ascending.
    pub bins: Vec<HistBin>,
}

impl DegreeHistogram {
    pub fn with_tags(mut self, direction: Direction, counting: Counting) -> Self {
        self.direction = Some(direction);
        self.counting = Some(counting);
        self
    }
}

fn edge(k: i64, bpd: u32) -> f64 {
    10f64.powf(k as f64 / bpd as f64)
}

/// Smallest integer >= the lower edge of bin `k`.
fn int_lo(k: i64, bpd: u32) -> u64 {
    let e = edge(k, bpd);
    (e * (1.0 - EDGE_EPS)).ceil().max(1.0) as u64
}

fn bin_of(value: u64, bpd: u32) -> i64 {
    let mut k = (bpd as f64 * (value as f64).log10()).floor() as i64;
    while int_lo(k + 1, bpd) <= value {
        k += 1;
    }
    while k > 0 && int_lo(k, bpd) > value {
        k -= 1;
    }
    k
}

fn log_mean(first: u64, last: u64) -> f64 {
    let n = (last - first + 1) as f64;
    let s: f64 = (first..=last).map(|d| (d as f64).ln()).sum();
    (s / n).exp()
}

/// Histogram of a degree sequence. Zero degrees are reported separately.
pub fn log_binned_histogram(degrees: &[u64], bins_per_decade: u32) -> Result<DegreeHistogram> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &d in degrees {
        *counts.entry(d).or_insert(0) += 1;
    }
    log_binned_counts(counts, bins_per_decade)
}

/// Histogram from `(value, how many samples have it)` pairs.
pub fn log_binned_counts(
    counts: impl IntoIterator<Item = (u64, u64)>,
    bins_per_decade: u32,
) -> Result<DegreeHistogram> {
    let points: Vec<(u64, u64)> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
    let total: u64 = points.iter().map(|&(_, c)| c).sum();
    build(
        points.into_iter().map(|(v, c)| (v, c, c as f64)),
        total,
        total as f64,
        bins_per_decade,
    )
}

/// Histogram of a curve sampled at integer abscissae: `mass` is the summed
/// weight (not normalized) and `density` the mean weight per integer. Used
/// for rank-decay curves.
pub fn log_binned_weights(
    points: impl IntoIterator<Item = (u64, f64)>,
    bins_per_decade: u32,
) -> Result<DegreeHistogram> {
    let points: Vec<(u64, f64)> = points.into_iter().collect();
    let total = points.len() as u64;
    build(
        points.into_iter().map(|(v, w)| (v, 1, w)),
        total,
        1.0,
        bins_per_decade,
    )
}

fn build(
    points: impl Iterator<Item = (u64, u64, f64)>,
    total: u64,
    norm: f64,
    bpd: u32,
) -> Result<DegreeHistogram> {
    if bpd == 0 {
        return Err(Error::InvalidParameter(
            "bins_per_decade must be at least 1".into(),
        ));
    }
    let mut zero_count = 0u64;
    let mut zero_weight = 0.0;
    let mut max_value = 0u64;
    // bin -> (count, weight)
    let mut acc: BTreeMap<i64, (u64, f64)> = BTreeMap::new();
    for (value, count, weight) in points {
        if value == 0 {
            zero_count += count;
            zero_weight += weight;
            continue;
        }
        max_value = max_value.max(value);
        let slot = acc.entry(bin_of(value, bpd)).or_insert((0, 0.0));
        slot.0 += count;
        slot.1 += weight;
    }
    let bins = acc
        .into_iter()
        .map(|(k, (count, weight))| {
            let first = int_lo(k, bpd);
            let last = (int_lo(k + 1, bpd) - 1).min(max_value);
            let width = (last - first + 1) as f64;
            let mass = weight / norm;
            HistBin {
                lo: edge(k, bpd),
                hi: edge(k + 1, bpd),
                first,
                last,
                center: log_mean(first, last),
                mass,
                density: mass / width,
                count,
            }
        })
        .collect();
    Ok(DegreeHistogram {
        direction: None,
        counting: None,
        bins_per_decade: bpd,
        total,
        zero_count,
        zero_mass: if norm > 0.0 { zero_weight / norm } else { 0.0 },
        bins,
    })
}

/// Inclusive range of bin centers used by a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitRange {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub stderr: f64,
    /// Smallest and largest integer covered by the bins that entered the fit.
    pub fit_range: (u64, u64),
    pub bins_used: usize,
    pub method: String,
}

pub const FIT_METHOD: &str = "log-binned least squares";

/// Minimum raw count for a tail bin to enter the default fit.
const MIN_TAIL_COUNT: u64 = 5;

/// Least squares of `log10(density)` on `log10(center)`; `gamma` is minus
/// the slope.
///
/// Without an explicit range the first populated bin and any trailing bins
/// holding fewer than five samples are left out.
pub fn fit_power_law(h: &DegreeHistogram, fit_range: Option<FitRange>) -> Result<PowerLawFit> {
    let used: Vec<&HistBin> = match fit_range {
        Some(r) => h
            .bins
            .iter()
            .filter(|b| b.center >= r.min && b.center <= r.max && b.density > 0.0)
            .collect(),
        None => {
            let mut v: Vec<&HistBin> = h.bins.iter().skip(1).filter(|b| b.density > 0.0).collect();
            while v.last().is_some_and(|b| b.count < MIN_TAIL_COUNT) {
                v.pop();
            }
            v
        }
    };
    if used.len() < 3 {
        return Err(Error::InsufficientTail { usable: used.len() });
    }
    let xs: Vec<f64> = used.iter().map(|b| b.center.log10()).collect();
    let ys: Vec<f64> = used.iter().map(|b| b.density.log10()).collect();
    let (slope, stderr) = ols_slope(&xs, &ys);
    let gamma = -slope;
    if !(gamma > 0.0) {
        return Err(Error::NonDecayingTail { gamma });
    }
    Ok(PowerLawFit {
        gamma,
        stderr,
        fit_range: (used[0].first, used[used.len() - 1].last),
        bins_used: used.len(),
        method: FIT_METHOD.to_string(),
    })
}

/// Slope and its standard error for `y = a + b x`.
fn ols_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .sum();
    let stderr = if xs.len() > 2 {
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, stderr)
}
