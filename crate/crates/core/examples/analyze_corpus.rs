//! Scan a source tree and write the full report with its CSV sidecars,
//! spectrum included.
//!
//!     cargo run --release --example analyze_corpus -- linux-1.0 out/

use std::path::PathBuf;

use pcn::extractor::ExtractorConfig;
use pcn::io::analyze::Stage;
use pcn::io::{cmd_analyze, cmd_scan, AnalyzeConfig};

fn main() -> pcn::Result<()> {
    let mut args = std::env::args_os().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/traps"));
    let out_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("pcn-analysis"));
    std::fs::create_dir_all(&out_dir).expect("output directory");

    let graph_file = out_dir.join("graph.pcn");
    let (g, _) = cmd_scan(&root, &ExtractorConfig::default(), &graph_file, None)?;
    println!(
        "{} procedures, {} call edges",
        g.node_count(),
        g.edges().len()
    );

    let cfg = AnalyzeConfig {
        stages: [
            Stage::Degrees,
            Stage::Rank,
            Stage::Correlation,
            Stage::Spectrum,
        ]
        .into(),
        ..Default::default()
    };
    let outcome = cmd_analyze(&graph_file, &cfg, &out_dir)?;
    let r = &outcome.report;
    if let Some(c) = &r.correlation {
        println!(
            "kappa = {:.4}, critical set size {}",
            c.kappa, c.critical_size
        );
    }
    if let Some(s) = &r.spectrum {
        for t in &s.threshold_stats {
            println!("fraction |lambda| > {} = {:.4}", t.radius, t.fraction);
        }
    }
    for e in &r.stage_errors {
        println!("{} failed: {}", e.stage.name(), e.message);
    }
    println!(
        "report written to {}",
        out_dir.join("report.json").display()
    );
    Ok(())
}
