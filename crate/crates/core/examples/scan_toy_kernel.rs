//! Extracts the call network of a C tree (the bundled two-procedure toy
//! kernel unless a directory is given) and prints its nodes and edges.
//!
//!     cargo run --example scan_toy_kernel -- path/to/src

use std::path::PathBuf;

use pcn::extractor::{build_pcn, ExtractorConfig};

fn main() -> pcn::Result<()> {
    let root = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/toy"));

    let (g, report) = build_pcn(&root, &ExtractorConfig::default())?;
    println!(
        "{}: {} files, {} procedures, {} calls",
        root.display(),
        report.files_scanned,
        g.node_count(),
        g.total_calls()
    );
    for e in g.edges().iter().take(20) {
        println!(
            "  {} -> {} (x{})",
            g.name(e.src),
            g.name(e.dst),
            e.multiplicity
        );
    }
    if !report.unresolved_calls.is_empty() {
        let names: Vec<_> = report.unresolved_calls.keys().take(10).collect();
        println!("unresolved (first 10): {names:?}");
    }
    for d in report.diagnostics.iter().take(5) {
        println!("warning: {}:{}: {}", d.file, d.line, d.message);
    }
    Ok(())
}
