//! The end-to-end analysis behind `pcn analyze`.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::tables;
use crate::correlation::{
    critical_set, joint_histogram, kappa, product_histogram, CriticalSet, JointHistogram,
    DEFAULT_BIN_WIDTH_DECADES, DEFAULT_CRITICAL_FRACTION,
};
use crate::error::{Error, Result};
use crate::graph::{
    degree_sequence, fit_power_law, log_binned_histogram, CallGraph, Counting, DegreeHistogram,
    Direction, PowerLawFit, DEFAULT_BINS_PER_DECADE,
};
use crate::rank::{
    build_stochastic, pagerank_of, rank_decay_fit, GoogleParams, LinkDirection, RankDirection,
    RankVector, Weighting,
};
use crate::spectrum::{
    arnoldi_spectrum, google_spectrum, ArnoldiParams, SpectrumMethod, SpectrumResult,
    ThresholdStat, DEFAULT_ARNOLDI_K, DEFAULT_DENSE_LIMIT, DEFAULT_RADIUS,
};

pub const REPORT_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_EMPTY_CORPUS: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_STAGE_ERROR: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Degrees,
    Rank,
    Correlation,
    Spectrum,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Degrees => "degrees",
            Stage::Rank => "rank",
            Stage::Correlation => "correlation",
            Stage::Spectrum => "spectrum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    pub stages: BTreeSet<Stage>,
    pub google: GoogleParams,
    /// Column weighting for both rankings and the spectrum.
    pub weighting: Weighting,
    /// Orientation of the matrix whose spectrum is taken.
    pub spectrum_direction: LinkDirection,
    pub method: SpectrumMethod,
    pub dense_limit: usize,
    pub arnoldi_k: usize,
    pub radii: Vec<f64>,
    pub bins_per_decade: u32,
    pub bin_width_decades: f64,
    pub critical_fraction: f64,
    /// Entries listed in the report for top ranks and the critical set.
    pub top: usize,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            stages: [Stage::Degrees, Stage::Rank, Stage::Correlation].into(),
            google: GoogleParams::default(),
            weighting: Weighting::Distinct,
            spectrum_direction: LinkDirection::Forward,
            method: SpectrumMethod::Dense,
            dense_limit: DEFAULT_DENSE_LIMIT,
            arnoldi_k: DEFAULT_ARNOLDI_K,
            radii: vec![DEFAULT_RADIUS],
            bins_per_decade: DEFAULT_BINS_PER_DECADE,
            bin_width_decades: DEFAULT_BIN_WIDTH_DECADES,
            critical_fraction: DEFAULT_CRITICAL_FRACTION,
            top: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeLaw {
    pub direction: Direction,
    pub counting: Counting,
    pub max_degree: u64,
    pub zero_count: u64,
    /// `null` when no exponent could be fitted; see `fit_error`.
    pub fit: Option<PowerLawFit>,
    pub fit_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedNode {
    pub rank: usize,
    pub node: usize,
    pub name: String,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSummary {
    pub direction: RankDirection,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    /// `rho(K) ~ K^-beta`; `gamma` of the fit is `beta`.
    pub decay: Option<PowerLawFit>,
    pub decay_error: Option<String>,
    pub top: Vec<RankedNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSection {
    pub weighting: Weighting,
    pub popularity: RankSummary,
    pub influence: RankSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalEntry {
    pub node: usize,
    pub name: String,
    pub k: usize,
    pub k_star: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSection {
    pub kappa: f64,
    pub converged: bool,
    pub bin_width_decades: f64,
    pub joint_cells_populated: usize,
    pub critical_fraction: f64,
    pub critical_cutoff: usize,
    pub critical_size: usize,
    /// Leading members by `k + k_star`.
    pub critical: Vec<CriticalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub method: SpectrumMethod,
    pub link_direction: LinkDirection,
    pub n: usize,
    pub alpha: f64,
    pub computed: usize,
    pub partial: bool,
    pub unconverged: usize,
    /// Largest modulus after the unit eigenvalue.
    pub second_modulus: Option<f64>,
    pub threshold_stats: Vec<ThresholdStat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: Stage,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    /// The only field that differs between two runs on the same input.
    pub generated_at: String,
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub total_calls: u64,
    pub mean_calls_per_procedure: f64,
    pub self_loops: usize,
    pub degrees: Option<Vec<DegreeLaw>>,
    pub rank: Option<RankSection>,
    pub correlation: Option<CorrelationSection>,
    pub spectrum: Option<SpectrumSection>,
    pub stage_errors: Vec<StageError>,
    pub config: AnalyzeConfig,
}

/// Everything computed by [`analyze`], for writing sidecars or further use.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub degree_histograms: Vec<DegreeHistogram>,
    pub popularity: Option<RankVector>,
    pub influence: Option<RankVector>,
    pub joint: Option<JointHistogram>,
    pub product: Option<JointHistogram>,
    pub critical: Option<CriticalSet>,
    pub spectrum: Option<SpectrumResult>,
}

#[derive(Debug, Clone)]
pub struct AnalysisOutcome {
    pub report: AnalysisReport,
    pub artifacts: Artifacts,
    pub exit_code: i32,
}

fn now_rfc3339() -> String {
    use time::format_description::well_known::Rfc3339;
    time::OffsetDateTime::now_utc()
        .replace_nanosecond(0)
        .ok()
        .and_then(|t| t.format(&Rfc3339).ok())
        .unwrap_or_default()
}

fn fit_or_reason(r: Result<PowerLawFit>) -> (Option<PowerLawFit>, Option<String>) {
    match r {
        Ok(fit) => (Some(fit), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn summarize(g: &CallGraph, r: &RankVector, top: usize) -> RankSummary {
    let (decay, decay_error) = fit_or_reason(rank_decay_fit(r, None));
    RankSummary {
        direction: r.direction,
        converged: r.converged,
        iterations: r.iterations_used,
        residual: r.residual,
        decay,
        decay_error,
        top: r
            .order
            .iter()
            .take(top)
            .enumerate()
            .map(|(k, &node)| RankedNode {
                rank: k + 1,
                node,
                name: g.name(node).to_string(),
                rho: r.rho[node],
            })
            .collect(),
    }
}

fn degree_stage(g: &CallGraph, cfg: &AnalyzeConfig, art: &mut Artifacts) -> Result<Vec<DegreeLaw>> {
    let mut laws = Vec::new();
    for direction in [Direction::In, Direction::Out] {
        for counting in [Counting::Multiplicity, Counting::Distinct] {
            let seq = degree_sequence(g, direction, counting);
            let h = log_binned_histogram(&seq, cfg.bins_per_decade)?.with_tags(direction, counting);
            let (fit, fit_error) = fit_or_reason(fit_power_law(&h, None));
            laws.push(DegreeLaw {
                direction,
                counting,
                max_degree: seq.iter().copied().max().unwrap_or(0),
                zero_count: h.zero_count,
                fit,
                fit_error,
            });
            art.degree_histograms.push(h);
        }
    }
    Ok(laws)
}

fn rank_stage(g: &CallGraph, cfg: &AnalyzeConfig, art: &mut Artifacts) -> Result<RankSection> {
    let pop = pagerank_of(g, LinkDirection::Forward, cfg.weighting, &cfg.google)?;
    let inf = pagerank_of(g, LinkDirection::Reversed, cfg.weighting, &cfg.google)?;
    let section = RankSection {
        weighting: cfg.weighting,
        popularity: summarize(g, &pop, cfg.top),
        influence: summarize(g, &inf, cfg.top),
    };
    art.popularity = Some(pop);
    art.influence = Some(inf);
    Ok(section)
}

fn correlation_stage(
    g: &CallGraph,
    cfg: &AnalyzeConfig,
    art: &mut Artifacts,
) -> Result<CorrelationSection> {
    let (pop, inf) = match (&art.popularity, &art.influence) {
        (Some(p), Some(i)) => (p, i),
        _ => return Err(Error::InvalidParameter("rank vectors unavailable".into())),
    };
    let k = kappa(&pop.rho, &inf.rho)?;
    let joint = joint_histogram(pop, inf, cfg.bin_width_decades)?;
    let product = product_histogram(&joint);
    let crit = critical_set(pop, inf, cfg.critical_fraction)?;
    let section = CorrelationSection {
        kappa: k,
        converged: pop.converged && inf.converged,
        bin_width_decades: cfg.bin_width_decades,
        joint_cells_populated: joint.populated().count(),
        critical_fraction: crit.threshold_fraction,
        critical_cutoff: crit.cutoff,
        critical_size: crit.members.len(),
        critical: crit
            .members
            .iter()
            .take(cfg.top)
            .map(|m| CriticalEntry {
                node: m.node,
                name: g.name(m.node).to_string(),
                k: m.k,
                k_star: m.k_star,
            })
            .collect(),
    };
    art.joint = Some(joint);
    art.product = Some(product);
    art.critical = Some(crit);
    Ok(section)
}

fn spectrum_stage(
    g: &CallGraph,
    cfg: &AnalyzeConfig,
    art: &mut Artifacts,
) -> Result<SpectrumSection> {
    let s = build_stochastic(g, cfg.spectrum_direction, cfg.weighting);
    let alpha = cfg.google.alpha;
    let spec = match cfg.method {
        SpectrumMethod::Dense => google_spectrum(&s, alpha, cfg.dense_limit)?,
        SpectrumMethod::Arnoldi => {
            let p = ArnoldiParams {
                k: cfg.arnoldi_k,
                ..Default::default()
            };
            arnoldi_spectrum(&s, alpha, &p)?
        }
    }
    .with_thresholds(&cfg.radii);
    let section = SpectrumSection {
        method: spec.method,
        link_direction: cfg.spectrum_direction,
        n: spec.n,
        alpha,
        computed: spec.eigenvalues.len(),
        partial: spec.partial,
        unconverged: spec.unconverged.len(),
        second_modulus: spec.eigenvalues.get(1).map(|z| z.norm()),
        threshold_stats: spec.threshold_stats.clone(),
    };
    art.spectrum = Some(spec);
    Ok(section)
}

/// Runs the selected stages. Stage failures are recorded in the report and
/// reflected in the exit code rather than aborting; only invalid
/// configuration is an error.
pub fn analyze(g: &CallGraph, source: &str, cfg: &AnalyzeConfig) -> Result<AnalysisOutcome> {
    cfg.google.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut art = Artifacts::default();
    let mut stage_errors = Vec::new();
    let record = |stage: Stage, e: Error, errs: &mut Vec<StageError>| {
        errs.push(StageError {
            stage,
            message: e.to_string(),
        })
    };

    let degrees = if cfg.stages.contains(&Stage::Degrees) {
        degree_stage(g, cfg, &mut art)
            .map_err(|e| record(Stage::Degrees, e, &mut stage_errors))
            .ok()
    } else {
        None
    };
    let want_corr = cfg.stages.contains(&Stage::Correlation);
    let rank = if cfg.stages.contains(&Stage::Rank) || want_corr {
        rank_stage(g, cfg, &mut art)
            .map_err(|e| record(Stage::Rank, e, &mut stage_errors))
            .ok()
    } else {
        None
    };
    let correlation = if want_corr && rank.is_some() {
        correlation_stage(g, cfg, &mut art)
            .map_err(|e| record(Stage::Correlation, e, &mut stage_errors))
            .ok()
    } else {
        None
    };
    let spectrum = if cfg.stages.contains(&Stage::Spectrum) {
        spectrum_stage(g, cfg, &mut art)
            .map_err(|e| record(Stage::Spectrum, e, &mut stage_errors))
            .ok()
    } else {
        None
    };

    let not_converged = rank
        .as_ref()
        .is_some_and(|r| !r.popularity.converged || !r.influence.converged);
    let exit_code = if !stage_errors.is_empty() {
        EXIT_STAGE_ERROR
    } else if not_converged {
        EXIT_NOT_CONVERGED
    } else {
        EXIT_OK
    };
    let n = g.node_count();
    let report = AnalysisReport {
        schema: REPORT_SCHEMA,
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        generated_at: now_rfc3339(),
        source: source.to_string(),
        n,
        edges: g.edges().len(),
        total_calls: g.total_calls(),
        mean_calls_per_procedure: g.total_calls() as f64 / n as f64,
        self_loops: g.edges().iter().filter(|e| e.src == e.dst).count(),
        degrees,
        rank,
        correlation,
        spectrum,
        stage_errors,
        config: cfg.clone(),
    };
    Ok(AnalysisOutcome {
        report,
        artifacts: art,
        exit_code,
    })
}

/// Writes `report.json` and the CSV sidecars for whatever was computed.
pub fn write_outputs(dir: &Path, outcome: &AnalysisOutcome, g: &CallGraph) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let art = &outcome.artifacts;
    for h in &art.degree_histograms {
        let (Some(d), Some(c)) = (h.direction, h.counting) else {
            continue;
        };
        let name = format!("degree_{}_{}.csv", tag(&d), tag(&c));
        tables::write_degree_histogram(&dir.join(name), h)?;
    }
    if let Some(r) = &art.popularity {
        tables::write_rank_table(&dir.join("rank_popularity.csv"), g, r)?;
    }
    if let Some(r) = &art.influence {
        tables::write_rank_table(&dir.join("rank_influence.csv"), g, r)?;
    }
    if let Some(h) = &art.joint {
        tables::write_joint_histogram(&dir.join("joint_histogram.csv"), h)?;
    }
    if let Some(h) = &art.product {
        tables::write_joint_histogram(&dir.join("product_histogram.csv"), h)?;
    }
    if let Some(s) = &art.spectrum {
        tables::write_eigenvalues(&dir.join("eigenvalues.csv"), s)?;
    }
    let path = dir.join("report.json");
    let mut json = serde_json::to_string_pretty(&outcome.report)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    json.push('\n');
    std::fs::write(&path, json).map_err(|e| Error::io(&path, e))
}

fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
