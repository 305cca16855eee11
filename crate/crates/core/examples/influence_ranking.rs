//! Popularity (being called) against influence (calling) on a synthetic
//! heavy-tailed call graph.

use pcn::graph::generators::independent_propensities;
use pcn::rank::{
    influence_pagerank, pagerank_of, rank_decay_fit, GoogleParams, LinkDirection, Weighting,
};

fn main() -> pcn::Result<()> {
    let g = independent_propensities(5000, 4.0, 1.0, 42);
    let p = GoogleParams::default();
    let pop = pagerank_of(&g, LinkDirection::Forward, Weighting::Distinct, &p)?;
    let inf = influence_pagerank(&g, &p)?;
    let pos = inf.positions();

    println!("{:>4} {:>6} {:>12} {:>8}", "K", "node", "rho", "K*");
    for (k, &node) in pop.order.iter().take(10).enumerate() {
        println!(
            "{:>4} {:>6} {:>12.4e} {:>8}",
            k + 1,
            node,
            pop.rho[node],
            pos[node]
        );
    }
    for r in [&pop, &inf] {
        match rank_decay_fit(r, None) {
            Ok(fit) => println!(
                "{:?}: beta = {:.3} +- {:.3}",
                r.direction, fit.gamma, fit.stderr
            ),
            Err(e) => println!("{:?}: no fit ({e})", r.direction),
        }
    }
    Ok(())
}
