use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use pcn::extractor::{ExtractorConfig, Scope};
use pcn::io::analyze::{AnalyzeConfig, Stage, EXIT_OK};
use pcn::io::{cmd_analyze, cmd_load_edges, cmd_scan, exit_code, EdgeFormat};
use pcn::rank::{GoogleParams, LinkDirection, Weighting};
use pcn::spectrum::{SpectrumMethod, DEFAULT_ARNOLDI_K, DEFAULT_DENSE_LIMIT};

/// Lower-case keyword to enum, through the enum's serde names.
fn keyword<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
        .map_err(|_| format!("unknown value '{s}'"))
}

#[derive(Parser)]
#[command(
    name = "pcn",
    version,
    about = "Procedure call networks: extraction and analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the call network of a C source tree.
    Scan {
        dir: PathBuf,
        /// File extensions to scan.
        #[arg(long, value_delimiter = ',', default_value = "c,h")]
        ext: Vec<String>,
        /// global: one node per name; file: one node per (file, name).
        #[arg(long, value_parser = keyword::<Scope>, default_value = "global")]
        scope: Scope,
        #[arg(long)]
        out: PathBuf,
        /// Extraction report; defaults to <out>.scan.json.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Analyze a saved graph: degree laws, rankings, correlation, spectrum.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0.85)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Weight links by call multiplicity instead of counting each once.
        #[arg(long)]
        weighted: bool,
        /// Orientation of the Google matrix whose spectrum is taken.
        #[arg(long, value_parser = keyword::<LinkDirection>, default_value = "forward")]
        direction: LinkDirection,
        #[arg(long, value_delimiter = ',', value_parser = keyword::<Stage>,
              default_value = "degrees,rank,correlation")]
        stages: Vec<Stage>,
        #[arg(long, default_value_t = DEFAULT_DENSE_LIMIT)]
        dense_limit: usize,
        /// Modulus thresholds for the spectral fraction; repeatable.
        #[arg(long, default_values_t = [0.1])]
        radius: Vec<f64>,
        #[arg(long, value_parser = keyword::<SpectrumMethod>, default_value = "dense")]
        method: SpectrumMethod,
        #[arg(long, default_value_t = DEFAULT_ARNOLDI_K)]
        arnoldi_k: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Convert a directed edge list into a graph file.
    LoadEdges {
        file: PathBuf,
        #[arg(long, value_parser = keyword::<EdgeFormat>, default_value = "plain")]
        format: EdgeFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() {
    let Ok(v) = std::env::var("PCN_THREADS") else {
        return;
    };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => eprintln!("warning: ignoring PCN_THREADS={v:?}"),
    }
}

fn run(cli: Cli) -> Result<i32, pcn::Error> {
    match cli.command {
        Command::Scan {
            dir,
            ext,
            scope,
            out,
            report,
        } => {
            let config = ExtractorConfig {
                extensions: ext,
                scope,
            };
            let (g, rep) = cmd_scan(&dir, &config, &out, report.as_deref())?;
            eprintln!(
                "{} files, {} procedures, {} edges, {} calls ({} unresolved names)",
                rep.files_scanned,
                g.node_count(),
                g.edges().len(),
                g.total_calls(),
                rep.unresolved_calls.len()
            );
            Ok(EXIT_OK)
        }
        Command::Analyze {
            file,
            alpha,
            tol,
            max_iter,
            weighted,
            direction,
            stages,
            dense_limit,
            radius,
            method,
            arnoldi_k,
            out_dir,
        } => {
            let config = AnalyzeConfig {
                stages: stages.into_iter().collect(),
                google: GoogleParams {
                    alpha,
                    tol,
                    max_iter,
                },
                weighting: if weighted {
                    Weighting::Multiplicity
                } else {
                    Weighting::Distinct
                },
                spectrum_direction: direction,
                method,
                dense_limit,
                arnoldi_k,
                radii: radius,
                ..Default::default()
            };
            let outcome = cmd_analyze(&file, &config, &out_dir)?;
            let r = &outcome.report;
            if let Some(c) = &r.correlation {
                eprintln!("N = {}, kappa = {}", r.n, c.kappa);
            }
            for e in &r.stage_errors {
                eprintln!("stage {} failed: {}", e.stage.name(), e.message);
            }
            if let Some(rank) = &r.rank {
                for s in [&rank.popularity, &rank.influence] {
                    if !s.converged {
                        eprintln!("warning: {:?} ranking did not converge", s.direction);
                    }
                }
            }
            Ok(outcome.exit_code)
        }
        Command::LoadEdges { file, format, out } => {
            let g = cmd_load_edges(&file, format, &out)?;
            eprintln!("{} nodes, {} edges", g.node_count(), g.edges().len());
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    // Usage errors exit 1; 2 is reserved for an empty corpus.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
