//! Exact propagators `𝓤(t) = exp(−i𝓜𝓗t)` with `Z(t) = 𝓤(t) Z(0)`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::Error;
use crate::form::{bar, metric, DynamicalMatrix};
use crate::linalg::{expm, CMatrix, C64};
use crate::normal_modes::DiagonalForm;
use crate::spectral::{analyze, BogoliubovTransform};
use crate::tolerance::Tolerances;

/// Entries beyond this magnitude are reported as overflow.
pub const OVERFLOW_LIMIT: f64 = 1e100;

#[derive(Debug, Clone)]
pub struct Propagator {
    pub t: C64,
    pub u: CMatrix,
    /// `‖𝓤𝓜𝓤̄ − 𝓜‖`, small for every complex `t`.
    pub symplectic_residual: f64,
    /// `‖𝓤̄ − 𝓤†‖`, small only for real `t`.
    pub adjoint_residual: f64,
}

impl Propagator {
    pub fn max_abs(&self) -> f64 {
        self.u.max_abs()
    }

    /// `symplectic_residual / (‖𝓤‖ ‖𝓤̄‖)`.
    pub fn relative_symplectic_residual(&self) -> f64 {
        let nu = self.u.norm_fro();
        self.symplectic_residual / (nu * nu).max(f64::MIN_POSITIVE)
    }

    /// `𝓤̄ = 𝓣𝓤ᵗ𝓣`.
    pub fn bar(&self) -> CMatrix {
        bar(&self.u)
    }
}

pub fn propagate(d: &DynamicalMatrix, t: C64) -> Result<Propagator, Error> {
    let dm = d.as_matrix();
    let gen = dm.scale(C64::new(0.0, -1.0) * t);
    let u = match expm(&gen) {
        Some(u) => u,
        None => {
            return Err(Error::Overflow {
                max_entry: f64::INFINITY,
            })
        }
    };
    let max_entry = u.max_abs();
    if !u.is_finite() || max_entry > OVERFLOW_LIMIT {
        return Err(Error::Overflow {
            max_entry: if max_entry.is_finite() {
                max_entry
            } else {
                f64::INFINITY
            },
        });
    }
    let m = metric(d.n_modes());
    let ubar = bar(&u);
    let symplectic_residual = (&(&u * &m) * &ubar).distance(&m);
    let adjoint_residual = ubar.distance(&u.adjoint());
    Ok(Propagator {
        t,
        u,
        symplectic_residual,
        adjoint_residual,
    })
}

/// `(e^{−iλ_i t}, e^{iλ_i t})` for each mode.
pub fn mode_evolution(df: &DiagonalForm, t: C64) -> Vec<(C64, C64)> {
    df.mode_evolution(t)
}

/// `‖𝓦⁻¹𝓤𝓦 − diag(e^{−iλt}, e^{iλt})‖ / ‖𝓤‖`.
pub fn modal_residual(bt: &BogoliubovTransform, p: &Propagator) -> f64 {
    let n = bt.n_modes();
    let conj = &(&bt.w_inv * &p.u) * &bt.w;
    let i = C64::new(0.0, 1.0);
    let mut target = CMatrix::zeros(2 * n, 2 * n);
    for (k, &l) in bt.lambdas.iter().enumerate() {
        target[(k, k)] = (-i * l * p.t).exp();
        target[(k + n, k + n)] = (i * l * p.t).exp();
    }
    conj.distance(&target) / p.u.norm_fro().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthKind {
    Quasiperiodic,
    PolynomialTimesOscillation,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    /// `max |Im λ|`.
    pub rate: f64,
    /// Largest Jordan block size minus one.
    pub poly_degree: usize,
}

pub fn growth_class(d: &DynamicalMatrix, tol: &Tolerances) -> Result<GrowthClass, Error> {
    let a = analyze(d, tol)?;
    let rate = a.max_imag();
    let poly_degree = a.max_jordan_block() - 1;
    let kind = if rate > tol.eig * a.scale {
        GrowthKind::Exponential
    } else if poly_degree >= 1 {
        GrowthKind::PolynomialTimesOscillation
    } else {
        GrowthKind::Quasiperiodic
    };
    Ok(GrowthClass {
        kind,
        rate,
        poly_degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCheck {
    /// `‖𝓤_rk4 − 𝓤_exp‖`.
    pub residual: f64,
    /// `residual / ‖𝓤_exp‖`.
    pub relative: f64,
    /// Expected size of the relative truncation error.
    pub bound: f64,
}

/// Integrates `d𝓤/dt = −i𝓜𝓗 𝓤` from the identity with classical RK4 and
/// compares with the matrix exponential.
pub fn ode_cross_check(d: &DynamicalMatrix, t: f64, steps: usize) -> Result<OdeCheck, Error> {
    if steps == 0 {
        return Err(Error::InvalidParameters("steps must be at least 1"));
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameters("time must be finite"));
    }
    let dim = d.as_matrix().rows();
    let h = t / steps as f64;
    let gen = d.as_matrix().scale(C64::new(0.0, -1.0));
    let half = C64::new(0.5 * h, 0.0);
    let full = C64::new(h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let mut u = CMatrix::identity(dim);
    for _ in 0..steps {
        let k1 = &gen * &u;
        let k2 = &gen * &(&u + &k1.scale(half));
        let k3 = &gen * &(&u + &k2.scale(half));
        let k4 = &gen * &(&u + &k3.scale(full));
        let incr = &(&(&k1 + &k2.scale_real(2.0)) + &k3.scale_real(2.0)) + &k4;
        u = &u + &incr.scale(sixth);
    }
    let exact = propagate(d, C64::new(t, 0.0))?.u;
    let residual = u.distance(&exact);
    let relative = residual / exact.norm_fro().max(f64::MIN_POSITIVE);
    let hn = (h * d.as_matrix().norm_fro()).abs();
    let bound = (t.abs() * d.as_matrix().norm_fro() * hn.powi(4) / 120.0).max(1e-12) * 10.0;
    if relative > bound {
        return Err(Error::StepTooLarge {
            residual: relative,
            bound,
        });
    }
    Ok(OdeCheck {
        residual,
        relative,
        bound,
    })
}
