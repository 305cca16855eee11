mod common;

use std::f64::consts::PI;

use common::{arb_graph, dense_google};
use num_complex::Complex64;
use pcn::graph::generators::{directed_cycle, random_directed, random_with_dangling};
use pcn::rank::{
    build_stochastic, google_residual, pagerank, GoogleParams, LinkDirection, Weighting,
};
use pcn::spectrum::{
    arnoldi_spectrum, google_spectrum, spectral_fraction, ArnoldiParams, DenseMatrix,
};
use pcn::Error;
use proptest::prelude::*;

fn spectrum_of(g: &pcn::CallGraph) -> Vec<Complex64> {
    let s = build_stochastic(g, LinkDirection::Forward, Weighting::Distinct);
    google_spectrum(&s, 0.85, 4000).unwrap().eigenvalues
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_invariants(g in arb_graph(48)) {
        let n = g.node_count();
        let ev = spectrum_of(&g);
        prop_assert_eq!(ev.len(), n);
        prop_assert!((ev[0] - 1.0).norm() < 1e-8);
        prop_assert!(ev[1..].iter().all(|z| z.norm() <= 0.85 + 1e-8));
        let dense = dense_google(&g, 0.85, LinkDirection::Forward, Weighting::Distinct);
        let trace: f64 = (0..n).map(|i| dense[i][i]).sum();
        let sum: Complex64 = ev.iter().sum();
        prop_assert!((sum.re - trace).abs() < 1e-6 * n as f64);
        prop_assert!(sum.im.abs() < 1e-6 * n as f64);
        for z in &ev {
            let partner = ev.iter().map(|w| (w - z.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(partner < 1e-8);
        }
    }

    #[test]
    fn matches_explicit_matrix(g in arb_graph(30)) {
        // Densified operator against the matrix assembled in test code.
        let n = g.node_count();
        let oracle = dense_google(&g, 0.85, LinkDirection::Forward, Weighting::Distinct);
        let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
        let d = pcn::spectrum::densify_google(&s, 0.85, 4000).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((d.get(i, j) - oracle[i][j]).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn pagerank_is_the_unit_mode() {
    let g = random_with_dangling(150, 3.0, 0.2, 5);
    let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
    let p = GoogleParams::default();
    let r = pagerank(&s, &p).unwrap();
    assert!(google_residual(&s, p.alpha, &r.rho) < 10.0 * p.tol);
    let spec = google_spectrum(&s, p.alpha, 4000).unwrap();
    assert!((spec.eigenvalues[0] - 1.0).norm() < 1e-10);
}

#[test]
fn cycle_spectrum() {
    let ev = spectrum_of(&directed_cycle(16));
    let mut expected: Vec<Complex64> = (1..16)
        .map(|k| Complex64::from_polar(0.85, 2.0 * PI * k as f64 / 16.0))
        .collect();
    expected.push(Complex64::new(1.0, 0.0));
    for e in &expected {
        let d = ev
            .iter()
            .map(|z| (z - e).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-8, "missing {e}");
    }
    assert!(!expected.iter().any(|e| e.norm() < 0.5));
}

#[test]
fn fraction_counts_the_unit_mode() {
    let g = pcn::graph::generators::chain();
    let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
    let spec = google_spectrum(&s, 0.85, 4000).unwrap();
    assert_eq!(spectral_fraction(&spec, 0.1), 1.0);
    assert_eq!(spectral_fraction(&spec, 0.5), 0.5);
}

#[test]
fn dense_limit_is_enforced() {
    let g = random_directed(50, 2.0, 1);
    let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
    assert!(matches!(
        google_spectrum(&s, 0.85, 49),
        Err(Error::DenseLimit { n: 50, limit: 49 })
    ));
}

#[test]
fn arnoldi_agrees_with_dense() {
    for seed in 0..4 {
        let g = random_with_dangling(300, 3.0, 0.15, seed);
        let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
        let dense = google_spectrum(&s, 0.85, 4000).unwrap();
        let part = arnoldi_spectrum(
            &s,
            0.85,
            &ArnoldiParams {
                k: 8,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!part.partial && part.unconverged.is_empty());
        assert!(part.eigenvalues.len() >= 8 && part.eigenvalues.len() < 300);
        for (a, b) in part.moduli().iter().zip(dense.moduli()) {
            assert!((a - b).abs() < 1e-8, "seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn general_solver_on_a_known_matrix() {
    // Companion matrix of (x-1)(x-2)(x-3)(x^2+1) = x^5 - 6x^4 + 12x^3 - 12x^2 + 11x - 6.
    let n = 5;
    let mut rows = vec![vec![0.0; n]; n];
    rows[0] = vec![6.0, -12.0, 12.0, -11.0, 6.0];
    for i in 1..n {
        rows[i][i - 1] = 1.0;
    }
    let m = DenseMatrix::from_rows(&rows).unwrap();
    let spec = pcn::spectrum::eigenvalues_dense(&m);
    let want = [
        Complex64::new(3.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    for w in want {
        let d = spec
            .eigenvalues
            .iter()
            .map(|z| (z - w).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-9, "missing {w}");
    }
}
