//! Eigenvalues of the Google matrix: the full dense spectrum, the fraction
//! of modes above |lambda| = 0.1, and the leading part again by Arnoldi.

use pcn::graph::generators::random_with_dangling;
use pcn::rank::{build_stochastic, LinkDirection, Weighting};
use pcn::spectrum::{arnoldi_spectrum, google_spectrum, spectral_fraction, ArnoldiParams};

fn main() -> pcn::Result<()> {
    let g = random_with_dangling(800, 2.5, 0.2, 3);
    let s = build_stochastic(&g, LinkDirection::Forward, Weighting::Distinct);

    let dense = google_spectrum(&s, 0.85, 4000)?;
    println!("N = {}, partial = {}", dense.n, dense.partial);
    for r in [0.1, 0.3, 0.5] {
        println!(
            "fraction |lambda| > {r}: {:.4}",
            spectral_fraction(&dense, r)
        );
    }

    let p = ArnoldiParams {
        k: 12,
        ..Default::default()
    };
    let top = arnoldi_spectrum(&s, 0.85, &p)?;
    println!("\n{:>26} {:>26}", "dense", "arnoldi");
    for (d, a) in dense.eigenvalues.iter().zip(&top.eigenvalues) {
        println!(
            "{:>12.8} {:>+12.8}i {:>12.8} {:>+12.8}i",
            d.re, d.im, a.re, a.im
        );
    }
    Ok(())
}
