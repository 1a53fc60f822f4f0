use std::path::Path;

use bogoliubov_core::{classify, propagate, C64};
use serde::Serialize;

use super::{Format, Settings, FORMAT_VERSION};
use crate::error::CliError;
use crate::formfile;
use crate::grid::parse_points;
use crate::output::{csv_line, document, num};

#[derive(Debug, Clone, Serialize)]
pub struct EvolveRow {
    pub t: [f64; 2],
    pub max_abs_u: f64,
    pub symplectic_residual: f64,
    pub adjoint_residual: f64,
    /// `|e^{−iλ_k t}|` per mode.
    pub phase_abs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolveDoc {
    pub format_version: u32,
    pub input_digest: String,
    pub lambdas: Vec<[f64; 2]>,
    pub rows: Vec<EvolveRow>,
}

pub fn build(
    path: &Path,
    t_spec: &str,
    complex_time: f64,
    settings: &Settings,
) -> Result<EvolveDoc, CliError> {
    if !complex_time.is_finite() {
        return Err(CliError::Usage("--complex-time must be finite".into()));
    }
    let loaded = formfile::load(path, settings.tol.structure)?;
    let times = parse_points(t_spec)?;
    let report = classify(&loaded.form, &settings.tol)?;
    let lambdas = report.mode_frequencies.clone();
    let d = loaded.form.dynamical_matrix();
    let minus_i = C64::new(0.0, -1.0);
    let rows = times
        .iter()
        .map(|&t_re| {
            let t = C64::new(t_re, complex_time);
            let p = propagate(&d, t)?;
            Ok(EvolveRow {
                t: [t.re, t.im],
                max_abs_u: p.max_abs(),
                symplectic_residual: p.symplectic_residual,
                adjoint_residual: p.adjoint_residual,
                phase_abs: lambdas.iter().map(|&l| (minus_i * l * t).exp().norm()).collect(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(EvolveDoc {
        format_version: FORMAT_VERSION,
        input_digest: loaded.digest,
        lambdas: lambdas.iter().map(|l| [l.re, l.im]).collect(),
        rows,
    })
}

/// `t_re,t_im,max_abs_u,symplectic_residual,adjoint_residual,phase_abs_0,…`
pub fn csv_header(n_modes: usize) -> Vec<String> {
    let mut h: Vec<String> = [
        "t_re",
        "t_im",
        "max_abs_u",
        "symplectic_residual",
        "adjoint_residual",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    h.extend((0..n_modes).map(|k| format!("phase_abs_{k}")));
    h
}

pub fn render(doc: &EvolveDoc, format: Format) -> String {
    match format {
        Format::Doc => document(doc),
        Format::Csv => {
            let mut out = csv_line(csv_header(doc.lambdas.len()));
            for r in &doc.rows {
                let mut fields = vec![
                    num(r.t[0]),
                    num(r.t[1]),
                    num(r.max_abs_u),
                    num(r.symplectic_residual),
                    num(r.adjoint_residual),
                ];
                fields.extend(r.phase_abs.iter().copied().map(num));
                out += &csv_line(fields);
            }
            out
        }
    }
}

pub fn run(
    path: &Path,
    t_spec: &str,
    complex_time: f64,
    settings: &Settings,
) -> Result<String, CliError> {
    let doc = build(path, t_spec, complex_time, settings)?;
    Ok(render(&doc, settings.format_or(Format::Csv)))
}
