//! Log-binned degree histograms and power-law exponents for the four
//! combinations of direction and counting.

use pcn::graph::generators::independent_propensities;
use pcn::graph::{degree_sequence, fit_power_law, log_binned_histogram, Counting, Direction};

fn main() -> pcn::Result<()> {
    // Propensities ~ K^-1 give degree tails near P(k) ~ k^-2.
    let g = independent_propensities(50_000, 5.0, 1.0, 7);
    for direction in [Direction::In, Direction::Out] {
        for counting in [Counting::Multiplicity, Counting::Distinct] {
            let h = log_binned_histogram(&degree_sequence(&g, direction, counting), 5)?;
            match fit_power_law(&h, None) {
                Ok(f) => println!(
                    "{direction:?}/{counting:?}: gamma = {:.3} +- {:.3} over [{}, {}] ({} bins)",
                    f.gamma, f.stderr, f.fit_range.0, f.fit_range.1, f.bins_used
                ),
                Err(e) => println!("{direction:?}/{counting:?}: {e}"),
            }
        }
    }

    let h = log_binned_histogram(
        &degree_sequence(&g, Direction::In, Counting::Multiplicity),
        5,
    )?;
    println!(
        "\n{:>8} {:>8} {:>8} {:>12}",
        "first", "last", "count", "density"
    );
    for b in &h.bins {
        println!(
            "{:>8} {:>8} {:>8} {:>12.4e}",
            b.first, b.last, b.count, b.density
        );
    }
    Ok(())
}
