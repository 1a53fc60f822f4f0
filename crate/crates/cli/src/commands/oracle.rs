use std::path::Path;

use bogoliubov_core::oracle::{converges_from_above, ground_energies};
use bogoliubov_core::fock_spectrum_check;
use serde::Serialize;

use super::{Format, Settings, FORMAT_VERSION};
use crate::error::CliError;
use crate::formfile;
use crate::output::{csv_line, document, num};

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub level: usize,
    pub fock: f64,
    pub lattice: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroundTrend {
    pub n_max: Vec<usize>,
    pub ground: Vec<f64>,
    pub from_above: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleDoc {
    pub format_version: u32,
    pub input_digest: String,
    pub n_max: usize,
    pub zero_point: f64,
    pub lambdas: Vec<f64>,
    pub max_deviation: f64,
    pub rows: Vec<OracleRow>,
    pub ground_trend: GroundTrend,
}

/// Cutoffs `n_max − 6, …, n_max` in steps of two, as far as they are positive.
fn trend_cutoffs(n_max: usize) -> Vec<usize> {
    (0..4)
        .rev()
        .filter_map(|k| n_max.checked_sub(2 * k).filter(|&c| c >= 1))
        .collect()
}

pub fn build(
    path: &Path,
    n_max: usize,
    levels: usize,
    settings: &Settings,
) -> Result<OracleDoc, CliError> {
    if n_max == 0 || levels == 0 {
        return Err(CliError::Usage("--nmax and --levels must be positive".into()));
    }
    let loaded = formfile::load(path, settings.tol.structure)?;
    let report = fock_spectrum_check(&loaded.form, n_max, levels, &settings.tol)?;
    let cutoffs = trend_cutoffs(n_max);
    let ground = ground_energies(&loaded.form, &cutoffs)?;
    let from_above = converges_from_above(&ground, report.zero_point, 1e-10);
    Ok(OracleDoc {
        format_version: FORMAT_VERSION,
        input_digest: loaded.digest,
        n_max,
        zero_point: report.zero_point,
        lambdas: report.lambdas.clone(),
        max_deviation: report.max_deviation,
        rows: report
            .fock_levels
            .iter()
            .zip(&report.lattice)
            .enumerate()
            .map(|(level, (&fock, &lattice))| OracleRow {
                level,
                fock,
                lattice,
                deviation: (fock - lattice).abs(),
            })
            .collect(),
        ground_trend: GroundTrend {
            n_max: cutoffs,
            ground,
            from_above,
        },
    })
}

pub const CSV_HEADER: [&str; 4] = ["level", "fock", "lattice", "deviation"];

pub fn render(doc: &OracleDoc, format: Format) -> String {
    match format {
        Format::Doc => document(doc),
        Format::Csv => {
            let mut out = csv_line(CSV_HEADER);
            for r in &doc.rows {
                out += &csv_line([
                    r.level.to_string(),
                    num(r.fock),
                    num(r.lattice),
                    num(r.deviation),
                ]);
            }
            out
        }
    }
}

pub fn run(path: &Path, n_max: usize, levels: usize, settings: &Settings) -> Result<String, CliError> {
    let doc = build(path, n_max, levels, settings)?;
    Ok(render(&doc, settings.format_or(Format::Csv)))
}
