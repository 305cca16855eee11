//! The popularity/influence correlator on a graph whose calling and being
//! called are independent, and on one where they are coupled.

use pcn::correlation::{correlator, critical_set, joint_histogram, product_histogram};
use pcn::graph::generators::{coupled_propensities, independent_propensities};
use pcn::rank::{influence_pagerank, pagerank_of, GoogleParams, LinkDirection, Weighting};
use pcn::CallGraph;

fn report(label: &str, g: &CallGraph) -> pcn::Result<()> {
    let p = GoogleParams::default();
    let pop = pagerank_of(g, LinkDirection::Forward, Weighting::Distinct, &p)?;
    let inf = influence_pagerank(g, &p)?;
    let c = correlator(&pop, &inf)?;
    let joint = joint_histogram(&pop, &inf, 0.25)?;
    let product = product_histogram(&joint);
    let gap: f64 = joint
        .cells
        .iter()
        .zip(&product.cells)
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
        / joint.n as f64;
    let crit = critical_set(&pop, &inf, 0.01)?;
    println!(
        "{label:<12} N = {:>5}  kappa = {:>8.4}  |joint - product| / N = {:.3}  critical = {}",
        c.n,
        c.kappa,
        gap,
        crit.members.len()
    );
    Ok(())
}

fn main() -> pcn::Result<()> {
    report(
        "independent",
        &independent_propensities(10_000, 4.0, 1.0, 1),
    )?;
    report("coupled", &coupled_propensities(10_000, 4.0, 1.0, 1))?;
    Ok(())
}
