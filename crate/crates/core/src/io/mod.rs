//! Reading and writing graphs, edge-list ingestion, reports and the
//! commands behind the `pcn` binary.

pub mod analyze;
pub mod commands;
mod edgelist;
mod graphfile;
pub mod tables;

pub use analyze::{analyze, AnalysisOutcome, AnalysisReport, AnalyzeConfig, Stage};
pub use commands::{cmd_analyze, cmd_load_edges, cmd_scan, exit_code};
pub use edgelist::{load_edge_list, read_edge_list, EdgeFormat};
pub use graphfile::{graph_to_string, load_graph, read_graph, save_graph, write_graph};
