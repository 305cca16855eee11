//! Seeded synthetic graphs for tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CallGraph;

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> CallGraph {
    CallGraph::with_numeric_names(n, (0..n).map(|i| (i, (i + 1) % n, 1)))
        .expect("cycle edges are in range")
}

/// Two-node chain `f -> g`.
pub fn chain() -> CallGraph {
    CallGraph::from_edges(vec!["f".into(), "g".into()], [(0, 1, 1)]).expect("valid chain")
}

/// Random directed multigraph with `round(n * mean_degree)` call
/// occurrences drawn uniformly (self-loops and repeats allowed).
/// Nodes never drawn as a source are dangling.
pub fn random_directed(n: usize, mean_degree: f64, seed: u64) -> CallGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = (n as f64 * mean_degree).round() as usize;
    let edges: Vec<(usize, usize, u64)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), 1))
        .collect();
    CallGraph::with_numeric_names(n, edges).expect("edges are in range")
}

/// Random graph where a fraction of nodes is forced to be dangling and a
/// few self-loops are planted.
pub fn random_with_dangling(
    n: usize,
    mean_degree: f64,
    dangling_fraction: f64,
    seed: u64,
) -> CallGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(&mut rng);
    let n_dangling = ((n as f64) * dangling_fraction).round() as usize;
    let sources = &nodes[n_dangling.min(n)..];
    let m = (n as f64 * mean_degree).round() as usize;
    let mut edges: Vec<(usize, usize, u64)> = Vec::with_capacity(m + 4);
    if !sources.is_empty() {
        for _ in 0..m {
            let s = sources[rng.gen_range(0..sources.len())];
            edges.push((s, rng.gen_range(0..n), rng.gen_range(1..=3)));
        }
        for _ in 0..(n / 20).max(1) {
            let s = sources[rng.gen_range(0..sources.len())];
            edges.push((s, s, 1));
        }
    }
    CallGraph::with_numeric_names(n, edges).expect("edges are in range")
}

/// Graph whose in- and out-degree propensities are independent heavy-tailed
/// draws: every call picks its caller by out-propensity and its callee by
/// in-propensity, with the two propensity vectors independently shuffled.
/// Popularity and influence come out nearly uncorrelated.
pub fn independent_propensities(n: usize, mean_degree: f64, exponent: f64, seed: u64) -> CallGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<f64> = (1..=n).map(|k| (k as f64).powf(-exponent)).collect();
    let mut out_w = base.clone();
    let mut in_w = base;
    out_w.shuffle(&mut rng);
    in_w.shuffle(&mut rng);
    let out_cdf = cumulative(&out_w);
    let in_cdf = cumulative(&in_w);
    let m = (n as f64 * mean_degree).round() as usize;
    let edges: Vec<(usize, usize, u64)> = (0..m)
        .map(|_| (sample(&out_cdf, &mut rng), sample(&in_cdf, &mut rng), 1))
        .collect();
    CallGraph::with_numeric_names(n, edges).expect("edges are in range")
}

/// Like [`independent_propensities`], but every node gets the same
/// propensity for calling and for being called, so nodes that are called a
/// lot also call a lot. Popularity and influence come out correlated.
pub fn coupled_propensities(n: usize, mean_degree: f64, exponent: f64, seed: u64) -> CallGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: Vec<f64> = (1..=n).map(|k| (k as f64).powf(-exponent)).collect();
    w.shuffle(&mut rng);
    let cdf = cumulative(&w);
    let m = (n as f64 * mean_degree).round() as usize;
    let edges: Vec<(usize, usize, u64)> = (0..m)
        .map(|_| (sample(&cdf, &mut rng), sample(&cdf, &mut rng), 1))
        .collect();
    CallGraph::with_numeric_names(n, edges).expect("edges are in range")
}

fn cumulative(w: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    w.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

fn sample(cdf: &[f64], rng: &mut impl Rng) -> usize {
    let total = *cdf.last().expect("non-empty");
    let u = rng.gen::<f64>() * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}
