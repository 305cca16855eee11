//! A directed edge list (as from a web crawl) through the same pipeline.
//!
//!     cargo run --example web_edge_list -- crawl.txt

use std::path::PathBuf;

use pcn::io::{analyze, load_edge_list, AnalyzeConfig, EdgeFormat};

const SAMPLE: &str = "# page links
0 1
0 2
1 2
2 0
3 2
3 4
4 3
5 0
";

fn main() -> pcn::Result<()> {
    let path = match std::env::args_os().nth(1) {
        Some(p) => PathBuf::from(p),
        None => {
            let p = std::env::temp_dir().join("pcn-sample-edges.txt");
            std::fs::write(&p, SAMPLE).expect("temp dir is writable");
            p
        }
    };
    let g = load_edge_list(&path, EdgeFormat::Plain)?;
    let out = analyze(&g, &path.display().to_string(), &AnalyzeConfig::default())?;
    let r = &out.report;
    println!(
        "N = {}, edges = {}, calls = {}",
        r.n, r.edges, r.total_calls
    );
    if let Some(c) = &r.correlation {
        println!("kappa = {:.4}", c.kappa);
    }
    if let Some(rank) = &r.rank {
        let top: Vec<_> = rank
            .popularity
            .top
            .iter()
            .take(3)
            .map(|t| &t.name)
            .collect();
        println!("most popular: {top:?}");
    }
    Ok(())
}
