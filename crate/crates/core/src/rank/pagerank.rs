use serde::{Deserialize, Serialize};

use super::stochastic::{build_stochastic, LinkDirection, StochasticOperator, Weighting};
use crate::error::{Error, Result};
use crate::graph::{
    fit_power_law, log_binned_weights, CallGraph, FitRange, PowerLawFit, DEFAULT_BINS_PER_DECADE,
};
use crate::numeric::{l1_distance, pairwise_sum, pairwise_sum_by};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoogleParams {
    /// Probability of following a link rather than jumping uniformly.
    pub alpha: f64,
    /// L1 change between successive iterates at which iteration stops.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GoogleParams {
    fn default() -> Self {
        GoogleParams {
            alpha: 0.85,
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

impl GoogleParams {
    pub fn with_alpha(alpha: f64) -> Self {
        GoogleParams {
            alpha,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankDirection {
    /// Forward links: being called.
    Popularity,
    /// Reversed links: calling.
    Influence,
}

impl From<LinkDirection> for RankDirection {
    fn from(d: LinkDirection) -> Self {
        match d {
            LinkDirection::Forward => RankDirection::Popularity,
            LinkDirection::Reversed => RankDirection::Influence,
        }
    }
}

/// Stationary vector of a Google matrix with its induced ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankVector {
    pub rho: Vec<f64>,
    /// `order[K - 1]` is the node at rank `K`: descending `rho`, ties by
    /// ascending node id.
    pub order: Vec<usize>,
    pub direction: RankDirection,
    pub iterations_used: usize,
    /// L1 change of the last iteration.
    pub residual: f64,
    pub converged: bool,
}

impl RankVector {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// 1-based rank `K` of every node.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &node) in self.order.iter().enumerate() {
            pos[node] = k + 1;
        }
        pos
    }

    /// Builds the ordering for an arbitrary probability vector.
    pub fn from_rho(rho: Vec<f64>, direction: RankDirection) -> Self {
        let order = descending_order(&rho);
        RankVector {
            rho,
            order,
            direction,
            iterations_used: 0,
            residual: 0.0,
            converged: true,
        }
    }
}

fn descending_order(rho: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rho.len()).collect();
    // Stable: equal values keep ascending id.
    order.sort_by(|&a, &b| rho[b].total_cmp(&rho[a]));
    order
}

/// `y = G x` for any vector `x`.
pub fn apply_google(s: &StochasticOperator, alpha: f64, x: &[f64], y: &mut [f64]) {
    let n = s.n();
    s.mul_sparse(x, y);
    let dangling_mass = pairwise_sum_by(s.dangling().len(), |k| x[s.dangling()[k]]);
    let total = pairwise_sum(x);
    let shift = (alpha * dangling_mass + (1.0 - alpha) * total) / n as f64;
    for v in y.iter_mut() {
        *v = alpha * *v + shift;
    }
}

/// `||G x - x||_1`.
pub fn google_residual(s: &StochasticOperator, alpha: f64, x: &[f64]) -> f64 {
    let mut y = vec![0.0; x.len()];
    apply_google(s, alpha, x, &mut y);
    l1_distance(&y, x)
}

/// Power iteration from the uniform vector, renormalized to unit L1 mass
/// every step. A run that hits `max_iter` is returned with
/// `converged = false`.
pub fn pagerank(s: &StochasticOperator, p: &GoogleParams) -> Result<RankVector> {
    p.validate()?;
    let n = s.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let alpha = p.alpha;
    let teleport = (1.0 - alpha) / n as f64;
    let dangling = s.dangling();
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < p.max_iter {
        iterations += 1;
        let dangling_mass = pairwise_sum_by(dangling.len(), |k| x[dangling[k]]);
        s.mul_sparse(&x, &mut y);
        let shift = alpha * dangling_mass / n as f64 + teleport;
        for v in y.iter_mut() {
            *v = alpha * *v + shift;
        }
        let mass = pairwise_sum(&y);
        for v in y.iter_mut() {
            *v /= mass;
        }
        residual = l1_distance(&x, &y);
        std::mem::swap(&mut x, &mut y);
        if residual < p.tol {
            converged = true;
            break;
        }
    }
    let order = descending_order(&x);
    Ok(RankVector {
        rho: x,
        order,
        direction: s.link_direction().into(),
        iterations_used: iterations,
        residual,
        converged,
    })
}

/// Builds the operator for `g` and runs [`pagerank`].
pub fn pagerank_of(
    g: &CallGraph,
    link_direction: LinkDirection,
    weighting: Weighting,
    p: &GoogleParams,
) -> Result<RankVector> {
    pagerank(&build_stochastic(g, link_direction, weighting), p)
}

/// PageRank of the link-reversed graph with distinct weighting.
pub fn influence_pagerank(g: &CallGraph, p: &GoogleParams) -> Result<RankVector> {
    pagerank_of(g, LinkDirection::Reversed, Weighting::Distinct, p)
}

/// Fits `rho(K) ~ K^-beta` on the log-binned rank curve; the returned
/// `gamma` is `beta`.
pub fn rank_decay_fit(r: &RankVector, fit_range: Option<FitRange>) -> Result<PowerLawFit> {
    let curve = r
        .order
        .iter()
        .enumerate()
        .map(|(k, &node)| (k as u64 + 1, r.rho[node]));
    let h = log_binned_weights(curve, DEFAULT_BINS_PER_DECADE)?;
    fit_power_law(&h, fit_range)
}
