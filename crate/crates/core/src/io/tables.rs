//! CSV sidecars. Each file opens with a `# col,col,...` comment line so it
//! can be fed to gnuplot directly; reals carry 17 significant digits.

use std::io::Write;
use std::path::Path;

use crate::correlation::JointHistogram;
use crate::error::{Error, Result};
use crate::graph::{CallGraph, DegreeHistogram};
use crate::rank::RankVector;
use crate::spectrum::SpectrumResult;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_table<I, R>(path: &Path, columns: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let io_err = |e: std::io::Error| Error::io(path, e);
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    writeln!(file, "# {}", columns.join(",")).map_err(io_err)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(|e| Error::io(path, e.into()))?;
    }
    w.flush().map_err(io_err)
}

pub fn write_degree_histogram(path: &Path, h: &DegreeHistogram) -> Result<()> {
    write_table(
        path,
        &[
            "first", "last", "lo", "hi", "center", "count", "mass", "density",
        ],
        h.bins.iter().map(|b| {
            [
                b.first.to_string(),
                b.last.to_string(),
                real(b.lo),
                real(b.hi),
                real(b.center),
                b.count.to_string(),
                real(b.mass),
                real(b.density),
            ]
        }),
    )
}

/// One row per rank position `K = 1..N`.
pub fn write_rank_table(path: &Path, g: &CallGraph, r: &RankVector) -> Result<()> {
    write_table(
        path,
        &["rank", "node", "name", "rho"],
        r.order.iter().enumerate().map(|(k, &node)| {
            [
                (k + 1).to_string(),
                node.to_string(),
                g.name(node).to_string(),
                real(r.rho[node]),
            ]
        }),
    )
}

/// Dense matrix, one row per `log10 rho` bin and one column per
/// `log10 rho*` bin. Two comment lines carry the bin edges in log10 units.
pub fn write_joint_histogram(path: &Path, h: &JointHistogram) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io(path, e);
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    let edges = |e: Vec<f64>| e.into_iter().map(real).collect::<Vec<_>>().join(",");
    writeln!(file, "# x_edges (log10 rho),{}", edges(h.x_edges())).map_err(io_err)?;
    writeln!(file, "# y_edges (log10 rho*),{}", edges(h.y_edges())).map_err(io_err)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    for x in 0..h.nx {
        w.write_record((0..h.ny).map(|y| real(h.cell(x, y))))
            .map_err(|e| Error::io(path, e.into()))?;
    }
    w.flush().map_err(io_err)
}

pub fn write_eigenvalues(path: &Path, spec: &SpectrumResult) -> Result<()> {
    write_table(
        path,
        &["re", "im", "modulus"],
        spec.eigenvalues
            .iter()
            .map(|z| [real(z.re), real(z.im), real(z.norm())]),
    )
}
