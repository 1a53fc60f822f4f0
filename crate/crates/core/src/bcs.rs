//! Two-mode pairing model
//!
//! ```text
//! H = ε₊(b₊†b₊ + ½) + ε₋(b₋†b₋ + ½) + Δ(b₊b₋ + b₊†b₋†) + κ(b₊†b₋ + b₋†b₊),
//! ε± = ε ± γ
//! ```
//!
//! with closed-form spectra, transformations and propagators, used as ground
//! truth for the generic pipeline. Mode index 0 is `ν = +`, index 1 is `ν = −`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::Error;
use crate::form::{bar, metric, DynamicalMatrix, QuadraticForm};
use crate::linalg::{eigenvalues, CMatrix, RMatrix, C64};
use crate::operator::{LinearOperator, QuadraticOperator};
use crate::spectral::{analyze, BogoliubovTransform, Classification};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcsParams {
    pub epsilon: f64,
    pub gamma: f64,
    pub delta: f64,
    pub kappa: f64,
}

impl BcsParams {
    /// Requires finite inputs, `ε > 0` and `0 < γ < ε`.
    pub fn new(epsilon: f64, gamma: f64, delta: f64, kappa: f64) -> Result<Self, Error> {
        if ![epsilon, gamma, delta, kappa].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameters("parameters must be finite"));
        }
        if epsilon <= 0.0 {
            return Err(Error::InvalidParameters("epsilon must be positive"));
        }
        if gamma <= 0.0 || gamma >= epsilon {
            return Err(Error::InvalidParameters("gamma must satisfy 0 < gamma < epsilon"));
        }
        Ok(Self {
            epsilon,
            gamma,
            delta,
            kappa,
        })
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }

    /// `√(ε² − γ²)`.
    pub fn positivity_gap(&self) -> f64 {
        (self.epsilon * self.epsilon - self.gamma * self.gamma).sqrt()
    }

    /// `α = √(ε² − Δ²)`, principal branch (`Im α ≥ 0`).
    pub fn alpha(&self) -> C64 {
        C64::new(self.epsilon * self.epsilon - self.delta * self.delta, 0.0).sqrt()
    }
}

pub fn bcs_form(p: &BcsParams) -> QuadraticForm {
    let a = RMatrix::from_vec(
        2,
        2,
        vec![p.epsilon + p.gamma, p.kappa, p.kappa, p.epsilon - p.gamma],
    );
    let b = RMatrix::from_vec(2, 2, vec![0.0, p.delta, p.delta, 0.0]);
    QuadraticForm::from_real(&a, &b).expect("pairing model is always a valid form")
}

/// Eigenvalues of the extended matrix, ascending:
/// `ε ± √(γ² + (Δ ± κ)²)`. For `κ = 0` each value appears twice.
pub fn bcs_sigma(p: &BcsParams) -> [f64; 4] {
    let r1 = (p.gamma * p.gamma + (p.delta + p.kappa).powi(2)).sqrt();
    let r2 = (p.gamma * p.gamma + (p.delta - p.kappa).powi(2)).sqrt();
    let mut s = [p.epsilon - r1, p.epsilon - r2, p.epsilon + r1, p.epsilon + r2];
    s.sort_by(f64::total_cmp);
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaSource {
    /// Closed form, confirmed by the dense solve (or `κ = 0`, where it is exact).
    Analytic,
    /// The closed form disagreed with the dense solve, which was used instead.
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcsLambda {
    pub plus: C64,
    pub minus: C64,
    pub source: LambdaSource,
    /// Largest sign-insensitive distance between the closed form and the
    /// dense representatives; zero when no dense solve was needed.
    pub deviation: f64,
}

/// `λ_ν = νγ + α` for `κ = 0`.
pub fn lambda_unperturbed(p: &BcsParams) -> (C64, C64) {
    let a = p.alpha();
    (a + p.gamma, a - p.gamma)
}

/// Perturbed closed form `λ_ν = √(λ̃_ν² − κ²(ε²/γ² − 1))`,
/// `λ̃_ν = νγ + √(Δ_c² − Δ²)`, `Δ_c² = ε²(1 + κ²/γ²)`, principal roots.
/// Signs are undetermined by this expression.
pub fn lambda_perturbed(p: &BcsParams) -> (C64, C64) {
    let (e, g, k, d) = (p.epsilon, p.gamma, p.kappa, p.delta);
    let dc2 = e * e * (1.0 + k * k / (g * g));
    let root = C64::new(dc2 - d * d, 0.0).sqrt();
    let shift = k * k * (e * e / (g * g) - 1.0);
    let f = |nu: f64| {
        let t = root + nu * g;
        (t * t - shift).sqrt()
    };
    (f(1.0), f(-1.0))
}

/// `λ²` from the characteristic polynomial:
/// `γ² + ε² − Δ² + κ² ± 2√(γ²(ε² − Δ²) + κ²ε²)`.
pub fn lambda_squared(p: &BcsParams) -> (C64, C64) {
    let (e, g, k, d) = (p.epsilon, p.gamma, p.kappa, p.delta);
    let s = g * g + e * e - d * d + k * k;
    let disc = C64::new(g * g * (e * e - d * d) + k * k * e * e, 0.0).sqrt();
    (s + disc * 2.0, s - disc * 2.0)
}

pub fn bcs_lambda(p: &BcsParams, tol: &Tolerances) -> Result<BcsLambda, Error> {
    if p.kappa == 0.0 {
        let (plus, minus) = lambda_unperturbed(p);
        return Ok(BcsLambda {
            plus,
            minus,
            source: LambdaSource::Analytic,
            deviation: 0.0,
        });
    }
    let (ap, am) = lambda_perturbed(p);
    let analysis = analyze(&bcs_form(p).dynamical_matrix(), tol)?;
    let reps = analysis.representatives();
    let align = |l: C64| -> (C64, C64, f64) {
        let mut best = (l, l, f64::INFINITY);
        for &r in &reps {
            for cand in [l, -l] {
                let d = (cand - r).norm();
                if d < best.2 {
                    best = (cand, r, d);
                }
            }
        }
        best
    };
    let (lp, rp, dp) = align(ap);
    let (lm, rm, dm) = align(am);
    let deviation = dp.max(dm);
    if deviation <= tol.pair * analysis.scale.max(1.0) {
        Ok(BcsLambda {
            plus: lp,
            minus: lm,
            source: LambdaSource::Analytic,
            deviation,
        })
    } else {
        Ok(BcsLambda {
            plus: rp,
            minus: rm,
            source: LambdaSource::Dense,
            deviation,
        })
    }
}

/// `u, v = √((ε ± α)/2α)` with the sign of `v` fixed by `2αuv = Δ`.
pub fn bcs_uv(p: &BcsParams, tol: &Tolerances) -> Result<(C64, C64), Error> {
    if p.kappa != 0.0 {
        return Err(Error::InvalidParameters("u, v are defined only for kappa = 0"));
    }
    let alpha = p.alpha();
    if alpha.norm() <= tol.eig * p.epsilon {
        return Err(Error::DegenerateGap);
    }
    let two_alpha = alpha * 2.0;
    let u = ((alpha + p.epsilon) / two_alpha).sqrt();
    let mut v = ((-alpha + p.epsilon) / two_alpha).sqrt();
    let target = C64::new(p.delta, 0.0);
    if (two_alpha * u * v - target).norm() > (two_alpha * u * v + target).norm() {
        v = -v;
    }
    Ok((u, v))
}

/// `b_ν = u b'_ν − v b̄'_{−ν}`, `b†_ν = u b̄'_ν − v b'_{−ν}` as a
/// transformation with `λ_ν = νγ + α`.
pub fn bcs_transform(p: &BcsParams, tol: &Tolerances) -> Result<BogoliubovTransform, Error> {
    let (u, v) = bcs_uv(p, tol)?;
    let mut w = CMatrix::zeros(4, 4);
    for nu in 0..2 {
        let other = 1 - nu;
        w[(nu, nu)] = u;
        w[(nu, 2 + other)] = -v;
        w[(2 + nu, 2 + nu)] = u;
        w[(2 + nu, other)] = -v;
    }
    let m = metric(2);
    let w_inv = &(&m * &bar(&w)) * &m;
    let (lp, lm) = lambda_unperturbed(p);
    let real = p.delta.abs() <= p.epsilon;
    Ok(BogoliubovTransform {
        w,
        w_inv,
        lambdas: vec![lp, lm],
        hermitian: vec![real, real],
    })
}

fn closed_row(diag: C64, cross: C64, nu: usize) -> [C64; 4] {
    let mut row = [C64::new(0.0, 0.0); 4];
    row[nu] = diag;
    row[2 + (1 - nu)] = cross;
    row
}

/// `𝓤(t)` assembled from the closed-form Heisenberg solutions:
///
/// ```text
/// |Δ| ≠ ε:  b_ν(t) = e^{−iλ_ν t}[b_ν + v(1 − e^{2iαt})(v b_ν + u b†_{−ν})]
/// |Δ| = ε:  b_ν(t) = e^{−iνγt}[(1 − itε) b_ν − itΔ b†_{−ν}]
/// ```
///
/// and `b†_ν(t) = b_ν(t)†`.
pub fn bcs_closed_evolution(p: &BcsParams, t: f64, tol: &Tolerances) -> Result<CMatrix, Error> {
    if p.kappa != 0.0 {
        return Err(Error::InvalidParameters("closed-form evolution requires kappa = 0"));
    }
    let i = C64::new(0.0, 1.0);
    let mut u_t = CMatrix::zeros(4, 4);
    let degenerate = p.alpha().norm() <= tol.eig * p.epsilon;
    for nu in 0..2 {
        let sign = if nu == 0 { 1.0 } else { -1.0 };
        let row = if degenerate {
            let phase = (-i * sign * p.gamma * t).exp();
            closed_row(
                phase * (C64::new(1.0, 0.0) - i * t * p.epsilon),
                phase * (-i * t * p.delta),
                nu,
            )
        } else {
            let (u, v) = bcs_uv(p, tol)?;
            let alpha = p.alpha();
            let lambda = alpha + sign * p.gamma;
            let phase = (-i * lambda * t).exp();
            let mix = v * (C64::new(1.0, 0.0) - (i * alpha * 2.0 * t).exp());
            closed_row(phase * (mix * v + 1.0), phase * mix * u, nu)
        };
        for c in 0..4 {
            u_t[(nu, c)] = row[c];
            u_t[(2 + nu, (c + 2) % 4)] = row[c].conj();
        }
    }
    Ok(u_t)
}

/// Maximally decoupled representation at `|Δ| = ε`:
/// `H = γ(b̄ˢ₊bˢ₊ − b̄ˢ₋bˢ₋) + 2|Δ| b̄ˢ₋b̄ˢ₊`.
#[derive(Debug, Clone)]
pub struct JordanForm {
    /// `Z = 𝓦ₛ Zₛ`, `Zₛ = (bˢ₊, bˢ₋, b̄ˢ₊, b̄ˢ₋)`.
    pub transform: CMatrix,
    pub transform_inv: CMatrix,
    /// `(γ, 2|Δ|)`.
    pub coefficients: (f64, f64),
    /// Kernel of `b̄ˢ₋b̄ˢ₊` (sandwiched as `Z†KZ`).
    pub pair_invariant: CMatrix,
    /// Kernel of `b̄ˢ₊bˢ₊ − b̄ˢ₋bˢ₋`.
    pub number_invariant: CMatrix,
    pub parameters: BcsParams,
}

pub fn bcs_jordan_form(p: &BcsParams, tol: &Tolerances) -> Result<JordanForm, Error> {
    if p.kappa != 0.0 || (p.delta.abs() - p.epsilon).abs() > tol.eig * p.epsilon {
        return Err(Error::NotDegenerate);
    }
    let r = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    // b₊ = (bˢ₊ + b̄ˢ₋)/√2, b₋ = (bˢ₋ + b̄ˢ₊)/√2,
    // b₊† = (b̄ˢ₊ − bˢ₋)/√2, b₋† = (b̄ˢ₋ − bˢ₊)/√2.
    let mut w = CMatrix::from_vec(
        4,
        4,
        vec![
            r, z, z, r, //
            z, r, r, z, //
            z, -r, r, z, //
            -r, z, z, r,
        ],
    );
    if p.delta < 0.0 {
        // b₋ → −b₋ maps Δ to −Δ.
        for c in 0..4 {
            w[(1, c)] = -w[(1, c)];
            w[(3, c)] = -w[(3, c)];
        }
    }
    let m = metric(2);
    let w_inv = &(&m * &bar(&w)) * &m;
    let row = |k: usize| LinearOperator(w_inv.row(k).to_vec());
    let (bs_p, bs_m, bbar_p, bbar_m) = (row(0), row(1), row(2), row(3));
    let pair = bbar_m.product(&bbar_p);
    let number = bbar_p
        .product(&bs_p)
        .add(&bbar_m.product(&bs_m).scale(C64::new(-1.0, 0.0)));
    Ok(JordanForm {
        transform: w,
        transform_inv: w_inv,
        coefficients: (p.gamma, 2.0 * p.delta.abs()),
        pair_invariant: pair.kernel(),
        number_invariant: number.kernel(),
        parameters: *p,
    })
}

impl JordanForm {
    pub fn pair_operator(&self) -> QuadraticOperator {
        QuadraticOperator::from_hermitian_kernel(&self.pair_invariant)
    }

    pub fn number_operator(&self) -> QuadraticOperator {
        QuadraticOperator::from_hermitian_kernel(&self.number_invariant)
    }

    /// `‖𝓦ₛ𝓜𝓦̄ₛ − 𝓜‖`.
    pub fn metric_residual(&self) -> f64 {
        let m = metric(2);
        (&(&self.transform * &m) * &bar(&self.transform)).distance(&m)
    }

    /// Distance between `γ·number + 2|Δ|·pair` and `½Z†𝓗Z`.
    pub fn reconstruction_residual(&self) -> f64 {
        let (g, c) = self.coefficients;
        let h = self
            .number_operator()
            .scale(C64::new(g, 0.0))
            .add(&self.pair_operator().scale(C64::new(c, 0.0)));
        h.distance(&QuadraticOperator::hamiltonian(
            &bcs_form(&self.parameters).extended_matrix(),
        ))
    }

    /// Norm of the commutator of the two invariants.
    pub fn commutator_norm(&self) -> f64 {
        self.pair_operator()
            .commutator(&self.number_operator())
            .norm()
    }

    /// Relative `‖𝓤̄K𝓤 − K‖ / ‖K‖` for (pair, number).
    pub fn conservation_residuals(&self, u: &CMatrix) -> (f64, f64) {
        let ubar = bar(u);
        let f = |k: &CMatrix| (&(&ubar * k) * u).distance(k) / k.norm_fro();
        (f(&self.pair_invariant), f(&self.number_invariant))
    }

    /// `Zₛ(t) = 𝓦ₛ⁻¹𝓤(t)𝓦ₛ Zₛ` against
    /// `bˢ_ν(t) = e^{−iνγt}(bˢ_ν − 2itΔ b̄ˢ_{−ν})`, `b̄ˢ_ν(t) = e^{iνγt} b̄ˢ_ν`.
    pub fn evolution_residual(&self, u: &CMatrix, t: f64) -> f64 {
        let us = &(&self.transform_inv * u) * &self.transform;
        let expected = self.closed_evolution(t);
        us.distance(&expected) / expected.norm_fro()
    }

    /// Propagator in the `Zₛ` basis.
    pub fn closed_evolution(&self, t: f64) -> CMatrix {
        let i = C64::new(0.0, 1.0);
        let (g, c) = self.coefficients;
        let mut e = CMatrix::zeros(4, 4);
        for nu in 0..2 {
            let sign = if nu == 0 { 1.0 } else { -1.0 };
            let phase = (-i * sign * g * t).exp();
            e[(nu, nu)] = phase;
            e[(nu, 2 + (1 - nu))] = -phase * i * c * t;
            e[(2 + nu, 2 + nu)] = phase.conj();
        }
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcsThresholds {
    /// Largest `|Δ|` with a positive-definite form: `√(ε² − γ²) − |κ|`.
    pub positivity: f64,
    /// `κ = 0` onset of complex frequencies: `ε`.
    pub dynamical: f64,
    /// `Δ_c₋ = √(ε² − γ²) − |κ|` when `κ ≠ 0`.
    pub instability_onset: Option<f64>,
    /// `Δ_c₊ = √(ε² − γ²) + |κ|` when `κ ≠ 0`.
    pub window_end: Option<f64>,
    /// `(Δ_c₊, Δ_c)` with `Δ_c` from the characteristic polynomial, when a
    /// reentry window exists.
    pub reentry_window: Option<(f64, f64)>,
    /// `|κ|` must stay below `γ²/√(ε² − γ²)` for a reentry window.
    pub reentry_bound: f64,
    /// Outer threshold found by bisection on the dense spectrum.
    pub outer_numeric: Option<f64>,
    /// `√(ε²(1 + κ²/γ²))`.
    pub outer_squared_reading: Option<f64>,
    /// `ε²(1 + κ²/γ²)` taken literally.
    pub outer_literal_reading: Option<f64>,
}

/// Largest `|Im λ|` of the dense dynamical matrix.
pub fn dense_max_imag(p: &BcsParams) -> Result<f64, Error> {
    let d = bcs_form(p).dynamical_matrix();
    Ok(eigenvalues(d.as_matrix())?
        .iter()
        .map(|l| l.im.abs())
        .fold(0.0, f64::max))
}

pub fn bcs_thresholds(p: &BcsParams, tol: &Tolerances) -> Result<BcsThresholds, Error> {
    let gap = p.positivity_gap();
    let k = p.kappa.abs();
    let reentry_bound = p.gamma * p.gamma / gap;
    if k == 0.0 {
        return Ok(BcsThresholds {
            positivity: gap,
            dynamical: p.epsilon,
            instability_onset: None,
            window_end: None,
            reentry_window: None,
            reentry_bound,
            outer_numeric: None,
            outer_squared_reading: None,
            outer_literal_reading: None,
        });
    }
    let literal = p.epsilon * p.epsilon * (1.0 + k * k / (p.gamma * p.gamma));
    let squared = literal.sqrt();
    let lower = gap - k;
    let upper = gap + k;
    let has_window = k < reentry_bound;
    let outer_numeric = if has_window {
        outer_threshold(p, upper, tol)?
    } else {
        None
    };
    Ok(BcsThresholds {
        positivity: lower,
        dynamical: p.epsilon,
        instability_onset: Some(lower),
        window_end: Some(upper),
        reentry_window: has_window.then_some((upper, squared)),
        reentry_bound,
        outer_numeric,
        outer_squared_reading: Some(squared),
        outer_literal_reading: Some(literal),
    })
}

/// Scans upward from `start` for the first stable point, then the first
/// unstable one, and bisects between them.
fn outer_threshold(p: &BcsParams, start: f64, tol: &Tolerances) -> Result<Option<f64>, Error> {
    const SCAN: usize = 4000;
    let span = p.epsilon;
    let unstable = |d: f64| -> Result<bool, Error> {
        Ok(dense_max_imag(&p.with_delta(d))? > tol.cluster * p.epsilon)
    };
    let h = span / SCAN as f64;
    let mut lo = None;
    let mut hi = None;
    for s in 1..=SCAN {
        let d = start + s as f64 * h;
        let u = unstable(d)?;
        match (lo, u) {
            (None, false) => lo = Some(d),
            (Some(_), true) => {
                hi = Some(d);
                break;
            }
            _ => {}
        }
    }
    let (mut a, mut b) = match (lo, hi) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(None),
    };
    while b - a > 1e-13 * b {
        let mid = 0.5 * (a + b);
        if unstable(mid)? {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

impl BcsThresholds {
    /// Regime predicted for `Δ`. Exact threshold values map to the
    /// degenerate class of that boundary.
    pub fn regime(&self, delta: f64) -> Classification {
        use Classification::*;
        let d = delta.abs();
        match (self.instability_onset, self.window_end) {
            (Some(lo), Some(hi)) => {
                if d < lo {
                    PositiveDefinite
                } else if d == lo || d == hi {
                    NonDiagonalizable
                } else if d < hi {
                    UnstableComplex
                } else {
                    match self.reentry_window {
                        Some((_, outer)) if d < outer => StableNonPositive,
                        Some((_, outer)) if d == outer => NonDiagonalizable,
                        _ => UnstableComplex,
                    }
                }
            }
            _ => {
                if d < self.positivity {
                    PositiveDefinite
                } else if d < self.dynamical {
                    StableNonPositive
                } else if d == self.dynamical {
                    NonDiagonalizable
                } else {
                    UnstableComplex
                }
            }
        }
    }

    /// Critical `|Δ|` values, ascending.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut v = match (self.instability_onset, self.window_end) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![lo, hi];
                if let Some((_, outer)) = self.reentry_window {
                    v.push(outer);
                }
                v
            }
            _ => vec![self.positivity, self.dynamical],
        };
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Eigenvalues of the dense dynamical matrix, used as an independent check.
pub fn dense_dynamical_spectrum(p: &BcsParams) -> Result<Vec<C64>, Error> {
    let d: DynamicalMatrix = bcs_form(p).dynamical_matrix();
    eigenvalues(d.as_matrix())
}
