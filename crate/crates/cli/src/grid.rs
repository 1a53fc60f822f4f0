//! Inclusive parameter grids written `min:max:steps`.

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    /// Parses `min:max:steps`; requires `min < max` and `steps ≥ 2`.
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let bad = |reason| CliError::BadRange {
            spec: spec.to_string(),
            reason,
        };
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected min:max:steps"));
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad("max is not a number"))?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad("steps is not a count"))?;
        if !min.is_finite() || !max.is_finite() {
            return Err(bad("bounds must be finite"));
        }
        if min >= max {
            return Err(bad("min must be below max"));
        }
        if steps < 2 {
            return Err(bad("steps must be at least 2"));
        }
        Ok(Self { min, max, steps })
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.steps - 1) as f64
    }

    /// Grid points, endpoints included exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / last
                }
            })
            .collect()
    }
}

/// A single value or an inclusive grid.
pub fn parse_points(spec: &str) -> Result<Vec<f64>, CliError> {
    if spec.contains(':') {
        return Ok(Grid::parse(spec)?.points());
    }
    let v: f64 = spec.trim().parse().map_err(|_| CliError::BadRange {
        spec: spec.to_string(),
        reason: "expected a number or min:max:steps",
    })?;
    if !v.is_finite() {
        return Err(CliError::BadRange {
            spec: spec.to_string(),
            reason: "value must be finite",
        });
    }
    Ok(vec![v])
}
