use bogoliubov_core::{bcs_form, bcs_thresholds, classify, BcsParams, Classification};
use serde::Serialize;

use super::{Format, Settings, ThresholdsDoc, FORMAT_VERSION};
use crate::error::CliError;
use crate::grid::Grid;
use crate::output::{csv_line, document, num};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Delta,
    Kappa,
    Gamma,
}

impl Param {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "delta" => Ok(Param::Delta),
            "kappa" => Ok(Param::Kappa),
            "gamma" => Ok(Param::Gamma),
            other => Err(CliError::Usage(format!(
                "unknown sweep parameter '{other}' (expected delta, kappa or gamma)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Delta => "delta",
            Param::Kappa => "kappa",
            Param::Gamma => "gamma",
        }
    }

    fn set(self, base: Base, value: f64) -> Base {
        match self {
            Param::Delta => Base { delta: value, ..base },
            Param::Kappa => Base { kappa: value, ..base },
            Param::Gamma => Base { gamma: value, ..base },
        }
    }
}

/// Fixed pairing-model parameters the sweep starts from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base {
    pub epsilon: f64,
    pub gamma: f64,
    pub delta: f64,
    pub kappa: f64,
}

impl Base {
    fn params(self) -> Result<BcsParams, CliError> {
        Ok(BcsParams::new(self.epsilon, self.gamma, self.delta, self.kappa)?)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: Base,
    pub axes: Vec<(Param, Grid)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub gamma: f64,
    pub delta: f64,
    pub kappa: f64,
    pub code: u8,
    pub classification: &'static str,
    pub max_im: f64,
    pub min_sigma: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Transition {
    /// Last gridpoint of the old regime and first of the new one.
    pub between: [f64; 2],
    pub from: &'static str,
    pub to: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepDoc {
    pub format_version: u32,
    pub axes: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
    /// Regime changes along a single swept axis.
    pub transitions: Vec<Transition>,
    /// Present for a Δ sweep.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdsDoc>,
}

pub fn evaluate(point: Base, settings: &Settings) -> Result<SweepRow, CliError> {
    let p = point.params()?;
    let report = classify(&bcs_form(&p), &settings.tol)?;
    Ok(SweepRow {
        epsilon: p.epsilon,
        gamma: p.gamma,
        delta: p.delta,
        kappa: p.kappa,
        code: report.classification.code(),
        classification: report.classification.name(),
        max_im: report.max_imag(),
        min_sigma: report.min_h_eigenvalue(),
    })
}

fn points(spec: &SweepSpec) -> Result<Vec<Base>, CliError> {
    let mut pts = vec![spec.base];
    for (param, grid) in &spec.axes {
        let values = grid.points();
        pts = pts
            .iter()
            .flat_map(|&b| values.iter().map(move |&v| param.set(b, v)))
            .collect();
    }
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err(CliError::Usage("sweep needs one or two axes".into()));
    }
    if spec.axes.len() == 2 && spec.axes[0].0 == spec.axes[1].0 {
        return Err(CliError::Usage("sweep axes must differ".into()));
    }
    Ok(pts)
}

pub fn transitions(rows: &[SweepRow], value: impl Fn(&SweepRow) -> f64) -> Vec<Transition> {
    rows.windows(2)
        .filter(|w| w[0].code != w[1].code)
        .map(|w| Transition {
            between: [value(&w[0]), value(&w[1])],
            from: w[0].classification,
            to: w[1].classification,
        })
        .collect()
}

/// Regime changes between the stable and unstable classes only, ignoring
/// isolated degenerate points.
pub fn stability_sequence(rows: &[SweepRow]) -> Vec<bool> {
    let mut seq: Vec<bool> = Vec::new();
    for r in rows {
        if r.code == Classification::NonDiagonalizable.code() {
            continue;
        }
        let stable = r.code <= Classification::StableNonPositive.code();
        if seq.last() != Some(&stable) {
            seq.push(stable);
        }
    }
    seq
}

pub fn build(spec: &SweepSpec, settings: &Settings) -> Result<SweepDoc, CliError> {
    let pts = points(spec)?;
    let rows = settings.par_map(&pts, |&b| evaluate(b, settings))?;
    let single = (spec.axes.len() == 1).then(|| spec.axes[0].0);
    let transitions = match single {
        Some(Param::Delta) => transitions(&rows, |r| r.delta),
        Some(Param::Kappa) => transitions(&rows, |r| r.kappa),
        Some(Param::Gamma) => transitions(&rows, |r| r.gamma),
        None => Vec::new(),
    };
    let thresholds = match single {
        Some(Param::Delta) => Some(ThresholdsDoc::from(&bcs_thresholds(
            &spec.base.params()?,
            &settings.tol,
        )?)),
        _ => None,
    };
    Ok(SweepDoc {
        format_version: FORMAT_VERSION,
        axes: spec.axes.iter().map(|(p, _)| p.name()).collect(),
        rows,
        transitions,
        thresholds,
    })
}

pub const CSV_HEADER: [&str; 8] = [
    "epsilon",
    "gamma",
    "delta",
    "kappa",
    "code",
    "classification",
    "max_im",
    "min_sigma",
];

pub fn render(doc: &SweepDoc, format: Format) -> String {
    match format {
        Format::Doc => document(doc),
        Format::Csv => {
            let mut out = csv_line(CSV_HEADER);
            for r in &doc.rows {
                out += &csv_line([
                    num(r.epsilon),
                    num(r.gamma),
                    num(r.delta),
                    num(r.kappa),
                    r.code.to_string(),
                    r.classification.to_string(),
                    num(r.max_im),
                    num(r.min_sigma),
                ]);
            }
            out
        }
    }
}

pub fn run(spec: &SweepSpec, settings: &Settings) -> Result<String, CliError> {
    let doc = build(spec, settings)?;
    Ok(render(&doc, settings.format_or(Format::Csv)))
}
