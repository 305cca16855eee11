//! PageRank of the chain f -> g, checked against the closed form.

use pcn::graph::generators::chain;
use pcn::rank::{
    build_stochastic, google_residual, influence_pagerank, pagerank, GoogleParams, LinkDirection,
    Weighting,
};

fn main() -> pcn::Result<()> {
    let g = chain();
    let p = GoogleParams::default();
    let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);
    let r = pagerank(&s, &p)?;

    let a = p.alpha;
    println!("rho      = {:?}", r.rho);
    println!(
        "expected = [{}, {}]",
        1.0 / (2.0 + a),
        (1.0 + a) / (2.0 + a)
    );
    println!(
        "{} iterations, |G rho - rho|_1 = {:e}",
        r.iterations_used,
        google_residual(&s, a, &r.rho)
    );

    let inf = influence_pagerank(&g, &p)?;
    println!("influence = {:?} (the mirror image)", inf.rho);
    Ok(())
}
