//! Eigenvalues of a general real matrix: Householder reduction to upper
//! Hessenberg form, then Francis double-shift QR with deflation.

use num_complex::Complex64;

use super::dense::DenseMatrix;

/// Iterations allowed on one eigenvalue (or pair) before it is given up.
const MAX_ITS: usize = 60;

/// Householder similarity reduction to upper Hessenberg form, in place.
/// Entries below the first subdiagonal are set to zero.
pub fn reduce_to_hessenberg(a: &mut DenseMatrix) {
    let n = a.n();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n - 2 {
        let scale = (k + 1..n).fold(0.0f64, |m, i| m.max(a.get(i, k).abs()));
        if scale == 0.0 {
            continue;
        }
        for i in k + 1..n {
            v[i] = a.get(i, k) / scale;
        }
        let norm = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        let alpha = if v[k + 1] > 0.0 { -norm } else { norm };
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }

        // Left: A[k+1.., k..] -= 2 v (v^T A[k+1.., k..]).
        w[k..n].iter_mut().for_each(|x| *x = 0.0);
        for i in k + 1..n {
            let vi = v[i];
            let row = a.row(i);
            for j in k..n {
                w[j] += vi * row[j];
            }
        }
        for i in k + 1..n {
            let f = 2.0 * v[i];
            let row = a.row_mut(i);
            for j in k..n {
                row[j] -= f * w[j];
            }
        }

        // Right: A[.., k+1..] -= 2 (A[.., k+1..] v) v^T.
        for i in 0..n {
            let row = a.row_mut(i);
            let s: f64 = (k + 1..n).map(|j| row[j] * v[j]).sum();
            let f = 2.0 * s;
            for j in k + 1..n {
                row[j] -= f * v[j];
            }
        }

        a.set(k + 1, k, alpha * scale);
        for i in k + 2..n {
            a.set(i, k, 0.0);
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed in the process).
///
/// Returns the eigenvalues in deflation-position order together with the
/// positions that did not converge within the iteration budget; those hold
/// the diagonal estimate at the time the block was forcibly deflated.
pub fn hessenberg_eigenvalues(h: &mut DenseMatrix) -> (Vec<Complex64>, Vec<usize>) {
    let n = h.n();
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut unconverged = Vec::new();
    if n == 0 {
        return (Vec::new(), unconverged);
    }

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h.get(i, j).abs();
        }
    }

    let mut nn = n as isize - 1;
    let mut t = 0.0; // accumulated exceptional shifts
    let mut its = 0;
    while nn >= 0 {
        let nu = nn as usize;
        // Look for a single small subdiagonal element.
        let mut l = 0;
        for ll in (1..=nu).rev() {
            let mut s = h.get(ll - 1, ll - 1).abs() + h.get(ll, ll).abs();
            if s == 0.0 {
                s = anorm;
            }
            if h.get(ll, ll - 1).abs() <= f64::EPSILON * s {
                h.set(ll, ll - 1, 0.0);
                l = ll;
                break;
            }
        }
        let mut x = h.get(nu, nu);
        if l == nu {
            wr[nu] = x + t;
            wi[nu] = 0.0;
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = h.get(nu - 1, nu - 1);
        let mut w = h.get(nu, nu - 1) * h.get(nu - 1, nu);
        if l == nu - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + w;
            let z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                let z = p + z.copysign(p);
                wr[nu - 1] = x + z;
                wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                wi[nu - 1] = 0.0;
                wi[nu] = 0.0;
            } else {
                wr[nu - 1] = x + p;
                wr[nu] = x + p;
                wi[nu - 1] = z;
                wi[nu] = -z;
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if its == MAX_ITS {
            // Give up on the trailing eigenvalue: record the diagonal
            // estimate and deflate it.
            wr[nu] = x + t;
            wi[nu] = 0.0;
            unconverged.push(nu);
            h.set(nu, nu - 1, 0.0);
            nn -= 1;
            its = 0;
            continue;
        }
        if its > 0 && its % 10 == 0 {
            t += x;
            for i in 0..=nu {
                let d = h.get(i, i);
                h.set(i, i, d - x);
            }
            let s = h.get(nu, nu - 1).abs() + h.get(nu - 1, nu - 2).abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        its += 1;

        // Look for two consecutive small subdiagonal elements.
        let mut m = nu - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = h.get(m, m);
            let r0 = x - z;
            let s0 = y - z;
            p = (r0 * s0 - w) / h.get(m + 1, m) + h.get(m, m + 1);
            q = h.get(m + 1, m + 1) - z - r0 - s0;
            r = h.get(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = h.get(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (h.get(m - 1, m - 1).abs() + z.abs() + h.get(m + 1, m + 1).abs());
            if u <= f64::EPSILON * v {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=nu {
            h.set(i, i - 2, 0.0);
            if i != m + 2 {
                h.set(i, i - 3, 0.0);
            }
        }

        // Double QR step on rows l..=nu and columns m..=nu.
        for k in m..nu {
            if k != m {
                p = h.get(k, k - 1);
                q = h.get(k + 1, k - 1);
                r = if k != nu - 1 {
                    h.get(k + 2, k - 1)
                } else {
                    0.0
                };
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    let v = h.get(k, k - 1);
                    h.set(k, k - 1, -v);
                }
            } else {
                h.set(k, k - 1, -s * x);
            }
            p += s;
            x = p / s;
            y = q / s;
            let z = r / s;
            q /= p;
            r /= p;
            for j in k..=nu {
                let mut pp = h.get(k, j) + q * h.get(k + 1, j);
                if k != nu - 1 {
                    pp += r * h.get(k + 2, j);
                    let v = h.get(k + 2, j) - pp * z;
                    h.set(k + 2, j, v);
                }
                let v = h.get(k + 1, j) - pp * y;
                h.set(k + 1, j, v);
                let v = h.get(k, j) - pp * x;
                h.set(k, j, v);
            }
            let mmin = nu.min(k + 3);
            for i in l..=mmin {
                let mut pp = x * h.get(i, k) + y * h.get(i, k + 1);
                if k != nu - 1 {
                    pp += z * h.get(i, k + 2);
                    let v = h.get(i, k + 2) - pp * r;
                    h.set(i, k + 2, v);
                }
                let v = h.get(i, k + 1) - pp * q;
                h.set(i, k + 1, v);
                let v = h.get(i, k) - pp;
                h.set(i, k, v);
            }
        }
    }

    let values = wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect();
    (values, unconverged)
}

/// All eigenvalues of a general square matrix.
pub fn general_eigenvalues(a: &DenseMatrix) -> (Vec<Complex64>, Vec<usize>) {
    let mut h = a.clone();
    reduce_to_hessenberg(&mut h);
    hessenberg_eigenvalues(&mut h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in sorted(a.to_vec()).iter().zip(sorted(b.to_vec()).iter()) {
            assert!((x - y).norm() < tol, "{x} vs {y}");
        }
    }

    #[test]
    fn triangular() {
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![0.0, 4.0, 5.0],
            vec![0.0, 0.0, 6.0],
        ])
        .unwrap();
        let (ev, bad) = general_eigenvalues(&a);
        assert!(bad.is_empty());
        close(&ev, &[1.0, 4.0, 6.0].map(|r| Complex64::new(r, 0.0)), 1e-12);
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let a = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let (ev, _) = general_eigenvalues(&a);
        close(
            &ev,
            &[Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            1e-14,
        );
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let a = DenseMatrix::from_rows(&[
            vec![10.0, -35.0, 50.0, -24.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let (ev, _) = general_eigenvalues(&a);
        close(
            &ev,
            &[1.0, 2.0, 3.0, 4.0].map(|r| Complex64::new(r, 0.0)),
            1e-10,
        );
    }

    #[test]
    fn hessenberg_preserves_trace_and_shape() {
        let n = 12;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ((i * 31 + j * 17) % 11) as f64 - 5.0)
                    .collect()
            })
            .collect();
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let mut h = a.clone();
        reduce_to_hessenberg(&mut h);
        assert!((h.trace() - a.trace()).abs() < 1e-10);
        for i in 2..n {
            for j in 0..i - 1 {
                assert_eq!(h.get(i, j), 0.0);
            }
        }
        let fro = |m: &DenseMatrix| -> f64 {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| m.get(i, j).powi(2))
                .sum::<f64>()
        };
        assert!((fro(&h) - fro(&a)).abs() < 1e-9 * fro(&a));
    }

    #[test]
    fn empty_and_scalar() {
        assert!(general_eigenvalues(&DenseMatrix::zeros(0)).0.is_empty());
        let a = DenseMatrix::from_rows(&[vec![2.5]]).unwrap();
        assert_eq!(general_eigenvalues(&a).0, vec![Complex64::new(2.5, 0.0)]);
    }
}
