//! The three commands of the `pcn` binary as library functions.

use std::path::{Path, PathBuf};

use super::analyze::{
    analyze, write_outputs, AnalysisOutcome, AnalyzeConfig, EXIT_EMPTY_CORPUS, EXIT_FAILURE,
};
use super::edgelist::{load_edge_list, EdgeFormat};
use super::graphfile::{load_graph, save_graph};
use crate::error::{Error, Result};
use crate::extractor::{build_pcn, ExtractionReport, ExtractorConfig};
use crate::graph::CallGraph;

/// Process exit code for a command that failed with `err`.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::EmptyCorpus(_) => EXIT_EMPTY_CORPUS,
        _ => EXIT_FAILURE,
    }
}

/// Where `scan` puts its extraction report when no path is given.
pub fn default_scan_report_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".scan.json");
    PathBuf::from(s)
}

/// Extracts the call network under `root`, saves it to `out` and the
/// extraction report as JSON next to it.
pub fn cmd_scan(
    root: &Path,
    config: &ExtractorConfig,
    out: &Path,
    report_path: Option<&Path>,
) -> Result<(CallGraph, ExtractionReport)> {
    let (g, report) = build_pcn(root, config)?;
    save_graph(&g, out)?;
    let report_path = report_path.map_or_else(|| default_scan_report_path(out), Path::to_path_buf);
    let mut json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    json.push('\n');
    std::fs::write(&report_path, json).map_err(|e| Error::io(&report_path, e))?;
    Ok((g, report))
}

/// Loads a saved graph, analyzes it and writes the report and sidecars to
/// `out_dir`. The exit code of the outcome reflects convergence and stage
/// failures.
pub fn cmd_analyze(
    graph_file: &Path,
    config: &AnalyzeConfig,
    out_dir: &Path,
) -> Result<AnalysisOutcome> {
    let g = load_graph(graph_file)?;
    let source = graph_file.display().to_string();
    let outcome = analyze(&g, &source, config)?;
    write_outputs(out_dir, &outcome, &g)?;
    Ok(outcome)
}

/// Converts an edge list into the graph file format.
pub fn cmd_load_edges(input: &Path, format: EdgeFormat, out: &Path) -> Result<CallGraph> {
    let g = load_edge_list(input, format)?;
    save_graph(&g, out)?;
    Ok(g)
}
