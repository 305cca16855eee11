mod common;

use common::*;
use pcn::graph::generators::{chain, directed_cycle, random_with_dangling};
use pcn::rank::{
    build_stochastic, google_residual, influence_pagerank, pagerank, pagerank_of, GoogleParams,
    LinkDirection, RankDirection, RankVector, Weighting,
};
use proptest::prelude::*;

fn params() -> GoogleParams {
    GoogleParams::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_matches_dense_oracle(g in arb_graph(40), weighted in any::<bool>(), reversed in any::<bool>()) {
        let w = if weighted { Weighting::Multiplicity } else { Weighting::Distinct };
        let dir = if reversed { LinkDirection::Reversed } else { LinkDirection::Forward };
        let r = pagerank_of(&g, dir, w, &params()).unwrap();
        let oracle = dense_power(&dense_google(&g, 0.85, dir, w));
        prop_assert!(l1(&r.rho, &oracle) < 1e-10);
    }

    #[test]
    fn rank_vector_contract(g in arb_graph(60)) {
        let p = params();
        let r = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &p).unwrap();
        let n = g.node_count() as f64;
        let floor = (1.0 - p.alpha) / n;
        prop_assert!(r.converged);
        prop_assert!(r.rho.iter().all(|&v| v >= floor * (1.0 - 1e-12)));
        prop_assert!((r.rho.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
        prop_assert!(google_residual(&s, p.alpha, &r.rho) < 1e-10);
        for w in r.order.windows(2) {
            let (a, b) = (w[0], w[1]);
            prop_assert!(r.rho[a] > r.rho[b] || (r.rho[a] == r.rho[b] && a < b));
        }
    }

    #[test]
    fn permutation_equivariance((g, perm) in arb_graph_and_perm(30)) {
        let p = params();
        let r = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &p).unwrap();
        let rp = pagerank_of(&g.permuted(&perm).unwrap(), LinkDirection::Forward, Weighting::Distinct, &p).unwrap();
        for i in 0..g.node_count() {
            prop_assert!((r.rho[i] - rp.rho[perm[i]]).abs() < 1e-12);
        }
    }

    #[test]
    fn influence_is_pagerank_of_the_reversed_graph(g in arb_graph(40)) {
        let p = params();
        let inf = influence_pagerank(&g, &p).unwrap();
        let rev = pagerank_of(&g.reversed(), LinkDirection::Forward, Weighting::Distinct, &p).unwrap();
        prop_assert_eq!(&inf.rho, &rev.rho);
        prop_assert_eq!(&inf.order, &rev.order);
        prop_assert_eq!(inf.direction, RankDirection::Influence);
    }

    #[test]
    fn small_alpha_is_nearly_uniform(g in arb_graph(30)) {
        let r = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &GoogleParams::with_alpha(1e-9)).unwrap();
        let u = 1.0 / g.node_count() as f64;
        prop_assert!(r.rho.iter().all(|&v| (v - u).abs() < 1e-8));
    }
}

#[test]
fn chain_closed_form_and_mirror() {
    let r = pagerank_of(
        &chain(),
        LinkDirection::Forward,
        Weighting::Distinct,
        &params(),
    )
    .unwrap();
    assert!((r.rho[0] - 1.0 / 2.85).abs() < 1e-12);
    assert!((r.rho[1] - 1.85 / 2.85).abs() < 1e-12);
    assert_eq!(r.order, vec![1, 0]);
    let inf = influence_pagerank(&chain(), &params()).unwrap();
    assert!((inf.rho[0] - 1.85 / 2.85).abs() < 1e-12);
}

#[test]
fn cycle_is_uniform() {
    let r = pagerank_of(
        &directed_cycle(25),
        LinkDirection::Forward,
        Weighting::Distinct,
        &params(),
    )
    .unwrap();
    assert!(r.rho.iter().all(|&v| (v - 0.04).abs() < 1e-14));
    assert_eq!(r.order, (0..25).collect::<Vec<_>>());
}

#[test]
fn multiplicity_changes_the_walk() {
    let g = pcn::CallGraph::with_numeric_names(3, [(0, 1, 9), (0, 2, 1)]).unwrap();
    let d = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &params()).unwrap();
    let m = pagerank_of(
        &g,
        LinkDirection::Forward,
        Weighting::Multiplicity,
        &params(),
    )
    .unwrap();
    assert_eq!(d.rho[1], d.rho[2]);
    assert!(m.rho[1] > m.rho[2]);
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let g = random_with_dangling(200, 3.0, 0.1, 9);
    let p = GoogleParams {
        max_iter: 3,
        ..params()
    };
    let r = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &p).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations_used, 3);
    assert!((r.rho.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn invalid_parameters() {
    let s = build_stochastic(&chain(), LinkDirection::Forward, Weighting::Distinct);
    for alpha in [0.0, 1.0, -0.1, f64::NAN] {
        assert!(pagerank(&s, &GoogleParams::with_alpha(alpha)).is_err());
    }
}

#[test]
fn from_rho_breaks_ties_by_id() {
    let r = RankVector::from_rho(vec![0.2, 0.4, 0.2, 0.2], RankDirection::Popularity);
    assert_eq!(r.order, vec![1, 0, 2, 3]);
    assert_eq!(r.positions(), vec![2, 1, 3, 4]);
}
