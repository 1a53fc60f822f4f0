//! Form files: one JSON document
//!
//! ```json
//! {
//!   "n_modes": 2,
//!   "A": [[[1.3, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.7, 0.0]]],
//!   "B": [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]],
//!   "pairing": {"epsilon": 1.0, "gamma": 0.3, "delta": 0.5, "kappa": 0.0}
//! }
//! ```
//!
//! Entries are `[re, im]` pairs, rows first. `pairing` is optional and marks a
//! file generated from the two-mode pairing model; it must agree with `A`, `B`.
//! Unknown fields, non-finite numbers and ragged rows are rejected.

use std::path::Path;

use bogoliubov_core::{bcs_form, BcsParams, CMatrix, QuadraticForm, C64};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n_modes: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingMeta>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingMeta {
    pub epsilon: f64,
    pub gamma: f64,
    pub delta: f64,
    #[serde(default)]
    pub kappa: f64,
}

impl PairingMeta {
    pub fn params(&self) -> Result<BcsParams, bogoliubov_core::Error> {
        BcsParams::new(self.epsilon, self.gamma, self.delta, self.kappa)
    }
}

/// A validated form together with the digest of the bytes it came from.
#[derive(Debug, Clone)]
pub struct LoadedForm {
    pub form: QuadraticForm,
    pub digest: String,
    pub pairing: Option<BcsParams>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn load(path: &Path, tol_struct: f64) -> Result<LoadedForm, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&bytes, &path.display().to_string(), tol_struct)
}

pub fn parse(bytes: &[u8], origin: &str, tol_struct: f64) -> Result<LoadedForm, CliError> {
    let parse_err = |message: String| CliError::Parse {
        path: origin.to_string(),
        message,
    };
    let file: FormFile = serde_json::from_slice(bytes).map_err(|e| parse_err(e.to_string()))?;
    if file.n_modes == 0 {
        return Err(parse_err("field n_modes: must be at least 1".into()));
    }
    let a = matrix(&file.a, file.n_modes, "A").map_err(parse_err)?;
    let b = matrix(&file.b, file.n_modes, "B").map_err(parse_err)?;
    let form = QuadraticForm::with_tolerance(a, b, tol_struct)?;
    let pairing = match file.pairing {
        None => None,
        Some(meta) => {
            let p = meta.params()?;
            let reference = bcs_form(&p);
            let mismatch = reference.a().distance(form.a()) + reference.b().distance(form.b());
            if file.n_modes != 2 || mismatch > 1e-12 * (1.0 + reference.a().norm_fro()) {
                return Err(parse_err("field pairing: parameters do not reproduce A and B".into()));
            }
            Some(p)
        }
    };
    Ok(LoadedForm {
        form,
        digest: digest(bytes),
        pairing,
    })
}

fn matrix(rows: &[Vec<[f64; 2]>], n: usize, name: &str) -> Result<CMatrix, String> {
    if rows.len() != n {
        return Err(format!("field {name}: {} rows, expected {n}", rows.len()));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(format!("field {name}: row {i} has {} entries, expected {n}", row.len()));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(format!("field {name}: entry ({i}, {j}) is not finite"));
            }
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

fn rows_of(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

impl FormFile {
    pub fn from_form(form: &QuadraticForm) -> Self {
        Self {
            n_modes: form.n_modes(),
            a: rows_of(form.a()),
            b: rows_of(form.b()),
            pairing: None,
        }
    }

    pub fn pairing(p: &BcsParams) -> Self {
        Self {
            pairing: Some(PairingMeta {
                epsilon: p.epsilon,
                gamma: p.gamma,
                delta: p.delta,
                kappa: p.kappa,
            }),
            ..Self::from_form(&bcs_form(p))
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = BcsParams::new(1.0, 0.3, 0.5, 0.0).unwrap();
        let text = FormFile::pairing(&p).to_json();
        let loaded = parse(text.as_bytes(), "mem", 1e-12).unwrap();
        assert_eq!(loaded.pairing, Some(p));
        assert_eq!(loaded.form.a()[(0, 0)], C64::new(1.3, 0.0));
        assert!(loaded.digest.starts_with("sha256:"));
    }

    #[test]
    fn rejections() {
        let cases = [
            "",
            "{}",
            r#"{"n_modes": 1, "A": [[[1, 0]]], "B": [[[0, 0]]], "extra": 1}"#,
            r#"{"n_modes": 2, "A": [[[1, 0]]], "B": [[[0, 0]]]}"#,
            r#"{"n_modes": 1, "A": [[[1e999, 0]]], "B": [[[0, 0]]]}"#,
            r#"{"n_modes": 1, "A": [[[NaN, 0]]], "B": [[[0, 0]]]}"#,
            r#"{"n_modes": 0, "A": [], "B": []}"#,
        ];
        for c in cases {
            let r = parse(c.as_bytes(), "mem", 1e-12);
            assert!(matches!(r, Err(CliError::Parse { .. })), "{c}: {r:?}");
        }
        let asym = r#"{"n_modes": 2, "A": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "B": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}"#;
        let r = parse(asym.as_bytes(), "mem", 1e-12);
        assert!(matches!(r, Err(CliError::Core(bogoliubov_core::Error::StructureViolation { .. }))));
    }
}
