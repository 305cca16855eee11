//! Implicitly restarted Arnoldi for the largest-modulus eigenvalues of the
//! Google matrix, using only the sparse operator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dense::DenseMatrix;
use super::eigen::hessenberg_eigenvalues;
use crate::error::{Error, Result};
use crate::rank::{apply_google, StochasticOperator};

pub const DEFAULT_ARNOLDI_K: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArnoldiParams {
    /// Number of eigenvalues wanted.
    pub k: usize,
    /// Krylov basis size; `None` picks `max(2k + 1, k + 20)` capped at `N`.
    pub ncv: Option<usize>,
    /// Relative Ritz residual at which a value counts as converged.
    pub tol: f64,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for ArnoldiParams {
    fn default() -> Self {
        ArnoldiParams {
            k: DEFAULT_ARNOLDI_K,
            ncv: None,
            tol: 1e-10,
            max_restarts: 300,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArnoldiOutcome {
    /// Sorted by descending modulus.
    pub eigenvalues: Vec<Complex64>,
    /// Ritz residual estimate `|beta * y_m| / |y|` per eigenvalue.
    pub residuals: Vec<f64>,
    pub unconverged: Vec<usize>,
    pub restarts: usize,
    pub matvecs: usize,
}

/// `(m + 1) x m` Hessenberg matrix, row-major.
struct Hess {
    m: usize,
    a: Vec<f64>,
}

impl Hess {
    fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.m + j]
    }
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.m + j] = v;
    }
    /// Leading `k x k` block.
    fn square(&self, k: usize) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                d.set(i, j, self.get(i, j));
            }
        }
        d
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonalizes `w` against `basis` by classical Gram-Schmidt, repeating
/// the pass (DGKS) while it removes more than 30% of the norm, at most three
/// times. Returns the accumulated coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coef = vec![0.0; basis.len()];
    let mut before = norm(w);
    for _ in 0..3 {
        let h: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, &hv) in basis.iter().zip(&h) {
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi -= hv * vi;
            }
        }
        for (c, hv) in coef.iter_mut().zip(h) {
            *c += hv;
        }
        let after = norm(w);
        if after > std::f64::consts::FRAC_1_SQRT_2 * before {
            break;
        }
        before = after;
    }
    coef
}

struct Factorization<'a> {
    s: &'a StochasticOperator,
    alpha: f64,
    v: Vec<Vec<f64>>,
    h: Hess,
    rng: ChaCha8Rng,
    matvecs: usize,
}

impl Factorization<'_> {
    /// Extends a length-`from` factorization to length `m`.
    fn extend(&mut self, from: usize) {
        let n = self.s.n();
        let m = self.h.m;
        for j in from..m {
            let mut w = vec![0.0; n];
            apply_google(self.s, self.alpha, &self.v[j], &mut w);
            self.matvecs += 1;
            let scale = norm(&w);
            let coef = orthogonalize(&self.v[..=j], &mut w);
            for (i, c) in coef.into_iter().enumerate() {
                self.h.set(i, j, c);
            }
            let beta = norm(&w);
            let next = if beta > 1e-12 * scale.max(f64::MIN_POSITIVE) {
                self.h.set(j + 1, j, beta);
                w.iter().map(|x| x / beta).collect()
            } else {
                // Invariant subspace found: continue from a fresh direction.
                self.h.set(j + 1, j, 0.0);
                self.fresh_direction(j + 1)
            };
            if self.v.len() > j + 1 {
                self.v[j + 1] = next;
            } else {
                self.v.push(next);
            }
        }
    }

    fn fresh_direction(&mut self, len: usize) -> Vec<f64> {
        let n = self.s.n();
        loop {
            let mut w: Vec<f64> = (0..n).map(|_| self.rng.gen::<f64>() - 0.5).collect();
            orthogonalize(&self.v[..len], &mut w);
            let b = norm(&w);
            if b > 1e-8 {
                return w.iter().map(|x| x / b).collect();
            }
            if len >= n {
                return vec![0.0; n];
            }
        }
    }
}

fn by_modulus(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then(b.re.total_cmp(&a.re))
        .then(b.im.total_cmp(&a.im))
}

/// `|y_m| / |y|` for the eigenvector `y` of the Hessenberg block for
/// `theta`, from two steps of inverse iteration. `H - theta I` is factored
/// by Gaussian elimination with partial pivoting, which keeps the Hessenberg
/// shape and costs `O(m^2)`.
fn last_component_ratio(h: &DenseMatrix, theta: Complex64, hnorm: f64) -> f64 {
    let m = h.n();
    let zero = Complex64::new(0.0, 0.0);
    let floor = f64::EPSILON * hnorm.max(f64::MIN_POSITIVE);
    let mut a: Vec<Complex64> = (0..m * m)
        .map(|t| {
            let (i, j) = (t / m, t % m);
            let v = Complex64::new(h.get(i, j), 0.0);
            if i == j {
                v - theta
            } else {
                v
            }
        })
        .collect();
    let mut swapped = vec![false; m];
    let mut mult = vec![zero; m];
    for k in 0..m - 1 {
        if a[(k + 1) * m + k].norm() > a[k * m + k].norm() {
            for j in k..m {
                a.swap(k * m + j, (k + 1) * m + j);
            }
            swapped[k] = true;
        }
        if a[k * m + k].norm() < floor {
            a[k * m + k] = Complex64::new(floor, 0.0);
        }
        let l = a[(k + 1) * m + k] / a[k * m + k];
        mult[k] = l;
        a[(k + 1) * m + k] = zero;
        for j in k + 1..m {
            let t = a[k * m + j];
            a[(k + 1) * m + j] -= l * t;
        }
    }
    if a[m * m - 1].norm() < floor {
        a[m * m - 1] = Complex64::new(floor, 0.0);
    }
    let solve = |b: &mut [Complex64]| {
        for k in 0..m - 1 {
            if swapped[k] {
                b.swap(k, k + 1);
            }
            let t = b[k];
            b[k + 1] -= mult[k] * t;
        }
        for i in (0..m).rev() {
            let mut acc = b[i];
            for j in i + 1..m {
                acc -= a[i * m + j] * b[j];
            }
            b[i] = acc / a[i * m + i];
        }
        let nrm = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 && nrm.is_finite() {
            b.iter_mut().for_each(|v| *v /= nrm);
        }
    };
    let mut y = vec![Complex64::new(1.0 / (m as f64).sqrt(), 0.0); m];
    solve(&mut y);
    solve(&mut y);
    let total = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if !(total > 0.0) || !total.is_finite() {
        return 1.0;
    }
    y[m - 1].norm() / total
}

/// One implicit QR sweep on the leading `m x m` block of `h` driven by the
/// first column `first` (length 2 for a real shift, 3 for a shift pair),
/// accumulating the similarity into `q`.
fn shifted_sweep(h: &mut DenseMatrix, q: &mut DenseMatrix, first: &[f64]) {
    let m = h.n();
    let r0 = first.len();
    for k in 0..m - 1 {
        let r = r0.min(m - k);
        if r < 2 {
            break;
        }
        let mut v: Vec<f64> = if k == 0 {
            first[..r].to_vec()
        } else {
            (0..r).map(|i| h.get(k + i, k - 1)).collect()
        };
        // Scale first so that tiny bulges do not underflow when squared.
        let big = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if big == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= big);
        let nv = norm(&v);
        let alpha = if v[0] > 0.0 { -nv } else { nv };
        v[0] -= alpha;
        let vn = norm(&v);
        if vn == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vn);

        let c0 = k.saturating_sub(1);
        for j in c0..m {
            let s: f64 = (0..r).map(|i| v[i] * h.get(k + i, j)).sum();
            for i in 0..r {
                let val = h.get(k + i, j) - 2.0 * v[i] * s;
                h.set(k + i, j, val);
            }
        }
        for mat in [&mut *h, &mut *q] {
            for i in 0..m {
                let row = mat.row_mut(i);
                let s: f64 = (0..r).map(|l| v[l] * row[k + l]).sum();
                for l in 0..r {
                    row[k + l] -= 2.0 * v[l] * s;
                }
            }
        }
        if k > 0 {
            for i in 1..r {
                h.set(k + i, k - 1, 0.0);
            }
        }
    }
    for i in 2..m {
        for j in 0..i - 1 {
            h.set(i, j, 0.0);
        }
    }
}

/// The `k` largest-modulus eigenvalues of `G = alpha * S + (1 - alpha) / N`
/// by implicitly restarted Arnoldi with exact shifts. The rank-one terms
/// are applied inside the matrix-vector product; `G` is never formed.
pub fn arnoldi_eigenvalues(
    s: &StochasticOperator,
    alpha: f64,
    params: &ArnoldiParams,
) -> Result<ArnoldiOutcome> {
    let n = s.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if params.k == 0 {
        return Err(Error::InvalidParameter("arnoldi k must be positive".into()));
    }
    if !(params.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "arnoldi tol must be positive, got {}",
            params.tol
        )));
    }
    let k = params.k.min(n);
    let m = params
        .ncv
        .unwrap_or((2 * k + 1).max(k + 20))
        .clamp(k.min(n), n);
    if m < k {
        return Err(Error::InvalidParameter(format!(
            "ncv {m} is smaller than k {k}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut v0: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let b = norm(&v0);
    v0.iter_mut().for_each(|x| *x /= b);
    let mut f = Factorization {
        s,
        alpha,
        v: vec![v0],
        h: Hess {
            m,
            a: vec![0.0; (m + 1) * m],
        },
        rng,
        matvecs: 0,
    };
    f.extend(0);

    let mut restarts = 0;
    loop {
        let hm = f.h.square(m);
        let hnorm = (0..m)
            .map(|i| (0..m).map(|j| hm.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let (mut ritz, _) = hessenberg_eigenvalues(&mut hm.clone());
        ritz.sort_by(by_modulus);
        let beta = f.h.get(m, m - 1);
        let residuals: Vec<f64> = ritz[..k]
            .iter()
            .map(|&theta| beta.abs() * last_component_ratio(&hm, theta, hnorm))
            .collect();
        let unconverged: Vec<usize> = (0..k)
            .filter(|&i| residuals[i] > params.tol * ritz[i].norm().max(1e-3))
            .collect();

        // Keeping extra vectors for converged values speeds up the rest,
        // as in ARPACK.
        let mut keep = k + (k - unconverged.len()).min((m - k) / 2);
        if keep < m && ritz[keep - 1].im > 0.0 {
            keep += 1;
        }
        if unconverged.is_empty() || restarts >= params.max_restarts || keep >= m {
            ritz.truncate(k);
            return Ok(ArnoldiOutcome {
                eigenvalues: ritz,
                residuals,
                unconverged,
                restarts,
                matvecs: f.matvecs,
            });
        }
        restarts += 1;

        // Filter out the unwanted Ritz values as exact shifts.
        let mut hq = hm.clone();
        let mut q = DenseMatrix::zeros(m);
        for i in 0..m {
            q.set(i, i, 1.0);
        }
        let mut i = keep;
        while i < m {
            let mu = ritz[i];
            if mu.im != 0.0 && i + 1 < m && ritz[i + 1] == mu.conj() {
                let sum = 2.0 * mu.re;
                let prod = mu.norm_sqr();
                let (h00, h01, h10) = (hq.get(0, 0), hq.get(0, 1), hq.get(1, 0));
                let h11 = hq.get(1, 1);
                let mut first = vec![
                    h00 * h00 + h01 * h10 - sum * h00 + prod,
                    h10 * (h00 + h11 - sum),
                ];
                if m > 2 {
                    first.push(h10 * hq.get(2, 1));
                }
                shifted_sweep(&mut hq, &mut q, &first);
                i += 2;
            } else {
                let first = [hq.get(0, 0) - mu.re, hq.get(1, 0)];
                shifted_sweep(&mut hq, &mut q, &first);
                i += 1;
            }
        }

        // V_keep <- V_m Q[:, ..=keep], then rebuild the residual direction.
        let sigma = q.get(m - 1, keep - 1);
        let h_next = hq.get(keep, keep - 1);
        let mut newv: Vec<Vec<f64>> = vec![vec![0.0; n]; keep + 1];
        for (j, col) in newv.iter_mut().enumerate() {
            for (i, vi) in f.v[..m].iter().enumerate() {
                let qij = q.get(i, j);
                if qij != 0.0 {
                    for (c, x) in col.iter_mut().zip(vi) {
                        *c += qij * x;
                    }
                }
            }
        }
        let mut r: Vec<f64> = newv[keep]
            .iter()
            .zip(&f.v[m])
            .map(|(a, b)| a * h_next + b * beta * sigma)
            .collect();
        newv.truncate(keep);
        let coef = orthogonalize(&newv, &mut r);
        let rb = norm(&r);

        let mut h = Hess {
            m,
            a: vec![0.0; (m + 1) * m],
        };
        for i in 0..keep {
            for j in 0..keep {
                h.set(i, j, hq.get(i, j));
            }
        }
        for (i, c) in coef.into_iter().enumerate() {
            let v = h.get(i, keep - 1) + c;
            h.set(i, keep - 1, v);
        }
        f.h = h;
        f.v = newv;
        let rscale = h_next.abs() + (beta * sigma).abs();
        if rb > 1e-12 * rscale.max(f64::MIN_POSITIVE) {
            f.h.set(keep, keep - 1, rb);
            f.v.push(r.iter().map(|x| x / rb).collect());
        } else {
            let fresh = f.fresh_direction(keep);
            f.v.push(fresh);
        }
        f.extend(keep);
    }
}
