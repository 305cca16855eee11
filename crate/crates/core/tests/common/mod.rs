#![allow(dead_code)]

use pcn::rank::{LinkDirection, Weighting};
use pcn::CallGraph;
use proptest::prelude::*;

/// Explicit Google matrix built straight from the edge list, row-major
/// `g[i][j]` = probability of stepping from `j` to `i`.
pub fn dense_google(g: &CallGraph, alpha: f64, dir: LinkDirection, w: Weighting) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut s = vec![vec![0.0; n]; n];
    for e in g.edges() {
        let (from, to) = match dir {
            LinkDirection::Forward => (e.src, e.dst),
            LinkDirection::Reversed => (e.dst, e.src),
        };
        s[to][from] += match w {
            Weighting::Distinct => 1.0,
            Weighting::Multiplicity => e.multiplicity as f64,
        };
    }
    for j in 0..n {
        let col: f64 = (0..n).map(|i| s[i][j]).sum();
        for row in s.iter_mut() {
            row[j] = if col == 0.0 {
                1.0 / n as f64
            } else {
                row[j] / col
            };
        }
    }
    let t = (1.0 - alpha) / n as f64;
    s.into_iter()
        .map(|row| row.into_iter().map(|v| alpha * v + t).collect())
        .collect()
}

pub fn dense_mul(g: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    g.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Plain power iteration on an explicit matrix.
pub fn dense_power(g: &[Vec<f64>]) -> Vec<f64> {
    let n = g.len();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..100_000 {
        let mut y = dense_mul(g, &x);
        let m: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= m);
        let d: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if d < 1e-15 {
            break;
        }
    }
    x
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Small random multigraphs, self-loops and dangling nodes included.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = CallGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u64..4), 0..4 * n)
            .prop_map(move |edges| CallGraph::with_numeric_names(n, edges).unwrap())
    })
}

/// A graph together with a permutation of its nodes.
pub fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (CallGraph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}
