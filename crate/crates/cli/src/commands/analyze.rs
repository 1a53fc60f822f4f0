use std::path::Path;

use bogoliubov_core::spectral::bilinear;
use bogoliubov_core::{
    bcs_thresholds, classify, diagonal_form, invariants, Classification, DiagonalForm,
    InvariantSet, StabilityReport, C64,
};
use serde::Serialize;

use super::{pair, Format, Settings, ThresholdsDoc, FORMAT_VERSION};
use crate::error::CliError;
use crate::formfile::{self, LoadedForm};
use crate::output::{csv_line, document, num};

#[derive(Debug, Clone, Serialize)]
pub struct ModeRow {
    pub lambda: [f64; 2],
    /// Absent when the form has no Bogoliubov transformation.
    pub hermitian: Option<bool>,
    /// `|W̄_ī 𝓜 W_i − 1|`.
    pub norm_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub scale: f64,
    pub max_imag: f64,
    pub pairing_residuals: Vec<f64>,
    pub rank_gaps: Vec<f64>,
    pub condition: Option<f64>,
    pub symplectic_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalModesDoc {
    pub zero_point_energy: [f64; 2],
    pub hermitian: Vec<bool>,
    pub zero_modes: Vec<usize>,
    /// Row `i` gives `b'_i = Σ_k r_k Z_k`.
    pub extract_b: Vec<Vec<[f64; 2]>>,
    pub extract_bbar: Vec<Vec<[f64; 2]>>,
    pub commutation_residual: f64,
    /// Kernels `K_i` of the conserved quadratic operators.
    pub invariants: Vec<Vec<Vec<[f64; 2]>>>,
}

impl NormalModesDoc {
    fn new(df: &DiagonalForm, inv: &InvariantSet) -> Self {
        let rows = |v: &[Vec<C64>]| -> Vec<Vec<[f64; 2]>> {
            v.iter().map(|r| r.iter().copied().map(pair).collect()).collect()
        };
        Self {
            zero_point_energy: pair(df.zero_point_energy),
            hermitian: df.hermitian_flags.clone(),
            zero_modes: df.zero_modes.clone(),
            extract_b: rows(&df.extract_b),
            extract_bbar: rows(&df.extract_bbar),
            commutation_residual: df.commutation_residual(),
            invariants: inv
                .k
                .iter()
                .map(|k| {
                    (0..k.rows())
                        .map(|i| k.row(i).iter().copied().map(pair).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub input_digest: String,
    pub n_modes: usize,
    pub classification: &'static str,
    pub classification_code: u8,
    pub diagonalizable: bool,
    pub zero_mode_count: usize,
    pub max_jordan_block: usize,
    pub modes: Vec<ModeRow>,
    pub h_eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdsDoc>,
    pub warnings: Vec<String>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_modes: Option<NormalModesDoc>,
}

impl AnalysisReport {
    pub fn classification(&self) -> Classification {
        match self.classification_code {
            0 => Classification::PositiveDefinite,
            1 => Classification::StableNonPositive,
            2 => Classification::UnstableComplex,
            _ => Classification::NonDiagonalizable,
        }
    }
}

pub fn build(
    loaded: &LoadedForm,
    settings: &Settings,
    emit_modes: bool,
) -> Result<AnalysisReport, CliError> {
    let report: StabilityReport = classify(&loaded.form, &settings.tol)?;
    let modes = match &report.transform {
        Some(bt) => (0..bt.n_modes())
            .map(|i| {
                let norm = bilinear(&bt.w_minus(i), &bt.w_plus(i));
                ModeRow {
                    lambda: pair(bt.lambdas[i]),
                    hermitian: Some(bt.hermitian[i]),
                    norm_residual: Some((norm - 1.0).norm()),
                }
            })
            .collect(),
        None => report
            .mode_frequencies
            .iter()
            .map(|&l| ModeRow {
                lambda: pair(l),
                hermitian: None,
                norm_residual: None,
            })
            .collect(),
    };
    let thresholds = match &loaded.pairing {
        Some(p) => Some(ThresholdsDoc::from(&bcs_thresholds(p, &settings.tol)?)),
        None => None,
    };
    let normal_modes = match (&report.transform, emit_modes) {
        (Some(bt), true) => Some(NormalModesDoc::new(
            &diagonal_form(bt, &settings.tol),
            &invariants(bt),
        )),
        _ => None,
    };
    Ok(AnalysisReport {
        format_version: FORMAT_VERSION,
        input_digest: loaded.digest.clone(),
        n_modes: loaded.form.n_modes(),
        classification: report.classification.name(),
        classification_code: report.classification.code(),
        diagonalizable: report.diagonalizable,
        zero_mode_count: report.zero_mode_count,
        max_jordan_block: report.max_jordan_block,
        modes,
        h_eigenvalues: report.h_eigenvalues.clone(),
        thresholds,
        warnings: report.warnings.iter().map(|w| w.to_string()).collect(),
        diagnostics: Diagnostics {
            scale: report.analysis.scale,
            max_imag: report.max_imag(),
            pairing_residuals: report.analysis.pairing_residuals.clone(),
            rank_gaps: report.analysis.clusters.iter().map(|c| c.rank_gap).collect(),
            condition: report.transform.as_ref().map(|bt| bt.condition()),
            symplectic_residual: report.transform.as_ref().map(|bt| bt.symplectic_residual()),
        },
        normal_modes,
    })
}

pub const CSV_HEADER: [&str; 6] = [
    "mode",
    "lambda_re",
    "lambda_im",
    "hermitian",
    "norm_residual",
    "classification",
];

pub fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Doc => document(report),
        Format::Csv => {
            let mut out = csv_line(CSV_HEADER);
            for (i, m) in report.modes.iter().enumerate() {
                out += &csv_line([
                    i.to_string(),
                    num(m.lambda[0]),
                    num(m.lambda[1]),
                    m.hermitian.map(|h| h.to_string()).unwrap_or_default(),
                    m.norm_residual.map(num).unwrap_or_default(),
                    report.classification.to_string(),
                ]);
            }
            out
        }
    }
}

pub fn run(path: &Path, emit_modes: bool, settings: &Settings) -> Result<String, CliError> {
    let loaded = formfile::load(path, settings.tol.structure)?;
    let report = build(&loaded, settings, emit_modes)?;
    Ok(render(&report, settings.format_or(Format::Doc)))
}
