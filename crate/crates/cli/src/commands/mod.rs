pub mod analyze;
pub mod bcs;
pub mod evolve;
pub mod oracle;
pub mod sweep;

use bogoliubov_core::{BcsThresholds, Tolerances, C64};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Doc,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone)]
#[derive(Default)]
pub struct Settings {
    pub tol: Tolerances,
    /// Worker threads for sweeps; 0 picks the machine default.
    pub jobs: usize,
    pub format: Option<Format>,
}


impl Settings {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// Maps `f` over `items` on the worker pool, keeping input order.
    pub fn par_map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>, CliError>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R, CliError> + Sync + Send,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", self.jobs)))?;
        pool.install(|| items.par_iter().map(&f).collect())
    }
}

pub const FORMAT_VERSION: u32 = 1;

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub const OUTER_THRESHOLD_NOTE: &str = "the closed form for the outer threshold is read as \
Delta_c^2 = eps^2 (1 + kappa^2/gamma^2); the literal value eps^2 (1 + kappa^2/gamma^2) is \
listed for comparison and outer_numeric, found by bisection on the dense spectrum, is authoritative";

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdsDoc {
    pub positivity: f64,
    pub dynamical: f64,
    pub instability_onset: Option<f64>,
    pub window_end: Option<f64>,
    pub reentry_window: Option<[f64; 2]>,
    pub reentry_bound: f64,
    pub outer_numeric: Option<f64>,
    pub outer_squared_reading: Option<f64>,
    pub outer_literal_reading: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl From<&BcsThresholds> for ThresholdsDoc {
    fn from(t: &BcsThresholds) -> Self {
        Self {
            positivity: t.positivity,
            dynamical: t.dynamical,
            instability_onset: t.instability_onset,
            window_end: t.window_end,
            reentry_window: t.reentry_window.map(|(a, b)| [a, b]),
            reentry_bound: t.reentry_bound,
            outer_numeric: t.outer_numeric,
            outer_squared_reading: t.outer_squared_reading,
            outer_literal_reading: t.outer_literal_reading,
            note: t.outer_literal_reading.map(|_| OUTER_THRESHOLD_NOTE),
        }
    }
}
