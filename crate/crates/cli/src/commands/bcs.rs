use std::path::Path;

use bogoliubov_core::bcs::LambdaSource;
use bogoliubov_core::{bcs_form, bcs_lambda, bcs_sigma, bcs_thresholds, classify, BcsParams};
use serde::Serialize;

use super::{pair, Format, Settings, ThresholdsDoc, FORMAT_VERSION};
use crate::error::CliError;
use crate::formfile::FormFile;
use crate::grid::Grid;
use crate::output::{csv_line, document, num};

#[derive(Debug, Clone, Serialize)]
pub struct BcsRow {
    pub delta: f64,
    pub code: u8,
    pub classification: &'static str,
    pub lambda_plus: [f64; 2],
    pub lambda_minus: [f64; 2],
    pub sigma: [f64; 4],
    /// `analytic` or `dense`.
    pub source: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct BcsDoc {
    pub format_version: u32,
    pub epsilon: f64,
    pub gamma: f64,
    pub kappa: f64,
    pub thresholds: ThresholdsDoc,
    pub rows: Vec<BcsRow>,
}

pub fn row(p: &BcsParams, settings: &Settings) -> Result<BcsRow, CliError> {
    let report = classify(&bcs_form(p), &settings.tol)?;
    let l = bcs_lambda(p, &settings.tol)?;
    Ok(BcsRow {
        delta: p.delta,
        code: report.classification.code(),
        classification: report.classification.name(),
        lambda_plus: pair(l.plus),
        lambda_minus: pair(l.minus),
        sigma: bcs_sigma(p),
        source: match l.source {
            LambdaSource::Analytic => "analytic",
            LambdaSource::Dense => "dense",
        },
    })
}

pub fn build(
    base: BcsParams,
    sweep: Option<&Grid>,
    settings: &Settings,
) -> Result<BcsDoc, CliError> {
    let deltas = match sweep {
        Some(g) => g.points(),
        None => vec![base.delta],
    };
    let params = deltas
        .iter()
        .map(|&d| Ok(BcsParams::new(base.epsilon, base.gamma, d, base.kappa)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let rows = settings.par_map(&params, |p| row(p, settings))?;
    Ok(BcsDoc {
        format_version: FORMAT_VERSION,
        epsilon: base.epsilon,
        gamma: base.gamma,
        kappa: base.kappa,
        thresholds: ThresholdsDoc::from(&bcs_thresholds(&base, &settings.tol)?),
        rows,
    })
}

pub const CSV_HEADER: [&str; 12] = [
    "delta",
    "code",
    "classification",
    "lambda_plus_re",
    "lambda_plus_im",
    "lambda_minus_re",
    "lambda_minus_im",
    "sigma_0",
    "sigma_1",
    "sigma_2",
    "sigma_3",
    "source",
];

pub fn render(doc: &BcsDoc, format: Format) -> String {
    match format {
        Format::Doc => document(doc),
        Format::Csv => {
            let mut out = csv_line(CSV_HEADER);
            for r in &doc.rows {
                let mut fields = vec![
                    num(r.delta),
                    r.code.to_string(),
                    r.classification.to_string(),
                    num(r.lambda_plus[0]),
                    num(r.lambda_plus[1]),
                    num(r.lambda_minus[0]),
                    num(r.lambda_minus[1]),
                ];
                fields.extend(r.sigma.iter().copied().map(num));
                fields.push(r.source.to_string());
                out += &csv_line(fields);
            }
            out
        }
    }
}

pub fn run(
    base: BcsParams,
    sweep: Option<&Grid>,
    emit_form: Option<&Path>,
    settings: &Settings,
) -> Result<String, CliError> {
    if let Some(path) = emit_form {
        std::fs::write(path, FormFile::pairing(&base).to_json()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let doc = build(base, sweep, settings)?;
    Ok(render(&doc, settings.format_or(Format::Csv)))
}
