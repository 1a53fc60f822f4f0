//! Diagonal representations built from a normalized transformation:
//! boson-like `H = Σ λ_i (b̄'_i b'_i + ½)`, the coordinate form
//! `H = ½ Σ (V'_i q'_i² + T'_i p'_i²)`, and the quadratic invariants.

use alloc::vec::Vec;


use crate::error::Error;
use crate::form::{bar, coordinate_transform, metric, swap, ExtendedMatrix};
use crate::linalg::{CMatrix, C64};
use crate::operator::{LinearOperator, QuadraticOperator};
use crate::spectral::{bilinear, BogoliubovTransform};
use crate::tolerance::Tolerances;

/// `H = Σ λ_i (b̄'_i b'_i + ½)`.
#[derive(Debug, Clone)]
pub struct DiagonalForm {
    pub lambdas: Vec<C64>,
    /// Rows `W̄_ī𝓜`: `b'_i = extract_b[i] · Z`.
    pub extract_b: Vec<Vec<C64>>,
    /// Columns `𝓜W_i`: `b̄'_i = Z† · extract_bbar[i]`.
    pub extract_bbar: Vec<Vec<C64>>,
    /// `b̄'_i = b'_i†`, which holds exactly when `λ_i` is real.
    pub hermitian_flags: Vec<bool>,
    /// Modes with `λ_i = 0` contribute nothing to the diagonal form.
    pub zero_modes: Vec<usize>,
    pub zero_point_energy: C64,
}

pub fn diagonal_form(bt: &BogoliubovTransform, tol: &Tolerances) -> DiagonalForm {
    let n = bt.n_modes();
    let tm = &swap(n) * &metric(n);
    let m = metric(n);
    let scale = bt.lambdas.iter().map(|l| l.norm()).fold(1.0, f64::max);
    let extract_b = (0..n)
        .map(|i| tm.transpose().apply(&bt.w_minus(i)))
        .collect();
    let extract_bbar = (0..n).map(|i| m.apply(&bt.w_plus(i))).collect();
    let hermitian_flags = bt
        .lambdas
        .iter()
        .map(|l| l.im.abs() <= tol.eig * scale)
        .collect();
    let zero_modes = (0..n)
        .filter(|&i| bt.lambdas[i].norm() <= tol.eig * scale)
        .collect();
    DiagonalForm {
        lambdas: bt.lambdas.clone(),
        extract_b,
        extract_bbar,
        hermitian_flags,
        zero_modes,
        zero_point_energy: bt.lambdas.iter().sum::<C64>() * 0.5,
    }
}

impl DiagonalForm {
    pub fn n_modes(&self) -> usize {
        self.lambdas.len()
    }

    /// `b'_i` as a linear operator on `Z`.
    pub fn b(&self, i: usize) -> LinearOperator {
        LinearOperator(self.extract_b[i].clone())
    }

    /// `b̄'_i` as a linear operator on `Z` (coefficients `𝓣𝓜W_i`).
    pub fn bbar(&self, i: usize) -> LinearOperator {
        let col = &self.extract_bbar[i];
        let n = self.n_modes();
        LinearOperator((0..2 * n).map(|a| col[(a + n) % (2 * n)]).collect())
    }

    /// Largest deviation of `[b'_i, b̄'_j] = δ_ij`, `[b'_i, b'_j] = 0`,
    /// `[b̄'_i, b̄'_j] = 0`.
    pub fn commutation_residual(&self) -> f64 {
        let n = self.n_modes();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                let bb = self.b(i).commutator(&self.bbar(j));
                worst = worst.max((bb - C64::new(delta, 0.0)).norm());
                worst = worst.max(self.b(i).commutator(&self.b(j)).norm());
                worst = worst.max(self.bbar(i).commutator(&self.bbar(j)).norm());
            }
        }
        worst
    }

    /// `‖b̄'_i − b'_i†‖` per mode.
    pub fn adjoint_residuals(&self) -> Vec<f64> {
        (0..self.n_modes())
            .map(|i| self.bbar(i).distance(&self.b(i).adjoint()))
            .collect()
    }

    /// `Σ λ_i (b̄'_i b'_i + ½)` as a quadratic operator.
    pub fn hamiltonian(&self) -> QuadraticOperator {
        let n = self.n_modes();
        let mut acc = QuadraticOperator {
            n: CMatrix::zeros(2 * n, 2 * n),
            constant: C64::new(0.0, 0.0),
        };
        for i in 0..n {
            let term = self.bbar(i).product(&self.b(i));
            let shifted = QuadraticOperator {
                n: term.n,
                constant: term.constant + 0.5,
            };
            acc = acc.add(&shifted.scale(self.lambdas[i]));
        }
        acc
    }

    /// Distance between the reassembled operator and `½Z†𝓗Z`.
    pub fn reconstruction_residual(&self, h: &ExtendedMatrix) -> f64 {
        self.hamiltonian()
            .distance(&QuadraticOperator::hamiltonian(h))
    }

    /// `(e^{−iλt}, e^{iλt})` per mode.
    pub fn mode_evolution(&self, t: C64) -> Vec<(C64, C64)> {
        let i = C64::new(0.0, 1.0);
        self.lambdas
            .iter()
            .map(|&l| ((-i * l * t).exp(), (i * l * t).exp()))
            .collect()
    }
}

/// One term of the coordinate-diagonal form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinateMode {
    /// `½λ (q'² + p'²)` after scaling; `s` is the principal fourth root used.
    Oscillator { lambda: C64, scale: C64 },
    /// `λ = 0`: unscaled coefficients, `V' = 0`.
    FreeParticle { t_prime: C64 },
}

/// `H = ½ Σ (V'_i q'_i² + T'_i p'_i²)`.
#[derive(Debug, Clone)]
pub struct CoordinateDiagonalForm {
    pub t_prime: Vec<C64>,
    pub v_prime: Vec<C64>,
    /// Coefficients of `q'_i` on `(q, p)`.
    pub extract_q: Vec<Vec<C64>>,
    /// Coefficients of `p'_i` on `(q, p)`.
    pub extract_p: Vec<Vec<C64>>,
    pub hermitian_flags: Vec<bool>,
    pub modes: Vec<CoordinateMode>,
    /// `max |T'_i V'_i − λ_i²|` before scaling.
    pub product_residual: f64,
    /// Largest off-diagonal entry of the transformed coordinate matrix.
    pub off_diagonal: f64,
}

/// Coordinate transform `𝓦_c = 𝓢†𝓦𝓢`, i.e. columns
/// `(𝓢†(W_i + W_ī)/√2, i𝓢†(W_i − W_ī)/√2)`.
pub fn coordinate_transform_of(bt: &BogoliubovTransform) -> CMatrix {
    let s = coordinate_transform(bt.n_modes());
    &(&s.adjoint() * &bt.w) * &s
}

pub fn coordinate_diagonal(
    h: &ExtendedMatrix,
    bt: &BogoliubovTransform,
    tol: &Tolerances,
) -> CoordinateDiagonalForm {
    let n = bt.n_modes();
    let s = coordinate_transform(n);
    let wc = coordinate_transform_of(bt);
    let hc = h.to_coordinates();
    let hp = &(&wc.transpose() * &hc) * &wc;
    let wc_inv = &(&s.adjoint() * &bt.w_inv) * &s;
    let scale = bt.lambdas.iter().map(|l| l.norm()).fold(1.0, f64::max);

    let mut off_diagonal: f64 = 0.0;
    for i in 0..2 * n {
        for j in 0..2 * n {
            if i != j {
                off_diagonal = off_diagonal.max(hp[(i, j)].norm());
            }
        }
    }

    let mut out = CoordinateDiagonalForm {
        t_prime: Vec::with_capacity(n),
        v_prime: Vec::with_capacity(n),
        extract_q: Vec::with_capacity(n),
        extract_p: Vec::with_capacity(n),
        hermitian_flags: Vec::with_capacity(n),
        modes: Vec::with_capacity(n),
        product_residual: 0.0,
        off_diagonal,
    };
    for i in 0..n {
        let lambda = bt.lambdas[i];
        let v = hp[(i, i)];
        let t = hp[(n + i, n + i)];
        out.product_residual = out.product_residual.max((t * v - lambda * lambda).norm());
        let q_row: Vec<C64> = wc_inv.row(i).to_vec();
        let p_row: Vec<C64> = wc_inv.row(n + i).to_vec();
        out.hermitian_flags.push(lambda.im.abs() <= tol.eig * scale);
        if lambda.norm() <= tol.eig * scale || t.norm() == 0.0 || v.norm() == 0.0 {
            out.t_prime.push(t);
            out.v_prime.push(C64::new(0.0, 0.0));
            out.extract_q.push(q_row);
            out.extract_p.push(p_row);
            out.modes.push(CoordinateMode::FreeParticle { t_prime: t });
            continue;
        }
        // q'' = s q', p'' = p'/s turns V'q'² + T'p'² into λ(q''² + p''²).
        let sc = (v / t).sqrt().sqrt();
        let root = (t * v).sqrt();
        out.t_prime.push(root);
        out.v_prime.push(root);
        out.extract_q.push(q_row.iter().map(|z| z * sc).collect());
        out.extract_p.push(p_row.iter().map(|z| z / sc).collect());
        out.modes.push(CoordinateMode::Oscillator { lambda: root, scale: sc });
    }
    out
}

impl CoordinateDiagonalForm {
    pub fn n_modes(&self) -> usize {
        self.t_prime.len()
    }

    fn on_z(row: &[C64]) -> LinearOperator {
        // (q, p) = 𝓢†Z
        let n = row.len() / 2;
        let s = coordinate_transform(n);
        let sa = s.adjoint();
        LinearOperator(
            (0..2 * n)
                .map(|b| (0..2 * n).map(|a| row[a] * sa[(a, b)]).sum())
                .collect(),
        )
    }

    /// `q'_i` as a linear operator on `Z`.
    pub fn q(&self, i: usize) -> LinearOperator {
        Self::on_z(&self.extract_q[i])
    }

    /// `p'_i` as a linear operator on `Z`.
    pub fn p(&self, i: usize) -> LinearOperator {
        Self::on_z(&self.extract_p[i])
    }
}

/// Conserved bilinears `b̄'_i b'_i = Z† K_i Z`, `K_i = 𝓜W_iW̄_ī𝓜`.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub k: Vec<CMatrix>,
}

pub fn invariants(bt: &BogoliubovTransform) -> InvariantSet {
    let n = bt.n_modes();
    let m = metric(n);
    let t = swap(n);
    let k = (0..n)
        .map(|i| {
            let mw = m.apply(&bt.w_plus(i));
            let wbar_m: Vec<C64> = {
                // W̄_ī𝓜 = W_īᵗ𝓣𝓜
                let tm = &t * &m;
                tm.transpose().apply(&bt.w_minus(i))
            };
            CMatrix::outer(&mw, &wbar_m)
        })
        .collect();
    InvariantSet { k }
}

impl InvariantSet {
    /// `‖𝓤̄K_i𝓤 − K_i‖ / ‖K_i‖` per invariant.
    pub fn conservation_residuals(&self, u: &CMatrix) -> Vec<f64> {
        let ubar = bar(u);
        self.k
            .iter()
            .map(|k| (&(&ubar * k) * u).distance(k) / k.norm_fro().max(f64::MIN_POSITIVE))
            .collect()
    }

    /// The invariants as symmetric-ordered operators.
    pub fn operators(&self) -> Vec<QuadraticOperator> {
        self.k
            .iter()
            .map(QuadraticOperator::from_hermitian_kernel)
            .collect()
    }
}

/// Exchanges the roles of `b'_i` and `−b̄'_i`: `W_i → −W_ī`, `W_ī → W_i`,
/// `λ_i → −λ_i`. Never applied implicitly.
pub fn swap_mode_labels(bt: &BogoliubovTransform, i: usize) -> Result<BogoliubovTransform, Error> {
    let n = bt.n_modes();
    if i >= n {
        return Err(Error::DimensionMismatch("mode index out of range"));
    }
    let mut out = bt.clone();
    let plus = bt.w_plus(i);
    let minus: Vec<C64> = bt.w_minus(i).into_iter().map(|z| -z).collect();
    out.w.set_column(i, &minus);
    out.w.set_column(i + n, &plus);
    out.lambdas[i] = -bt.lambdas[i];
    out.hermitian[i] = false;
    let m = metric(n);
    out.w_inv = &(&m * &bar(&out.w)) * &m;
    debug_assert!((bilinear(&plus, &minus) - C64::new(1.0, 0.0)).norm() < 1e-6);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::QuadraticForm;
    use crate::linalg::RMatrix;
    use crate::spectral::diagonalize;
    use alloc::vec;

    fn bcs(delta: f64) -> QuadraticForm {
        let a = RMatrix::from_vec(2, 2, vec![1.3, 0.0, 0.0, 0.7]);
        let b = RMatrix::from_vec(2, 2, vec![0.0, delta, delta, 0.0]);
        QuadraticForm::from_real(&a, &b).unwrap()
    }

    #[test]
    fn oscillator_extraction_rows_are_units() {
        let tol = Tolerances::default();
        let f = QuadraticForm::from_real(&RMatrix::identity(1), &RMatrix::zeros(1, 1)).unwrap();
        let bt = diagonalize(&f, &tol).unwrap();
        let df = diagonal_form(&bt, &tol);
        assert_eq!(df.extract_b[0], vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(df.bbar(0).0, vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        assert_eq!(df.zero_point_energy, C64::new(0.5, 0.0));
        let inv = invariants(&bt);
        assert_eq!(inv.k[0][(0, 0)], C64::new(1.0, 0.0));
        assert!((inv.k[0].norm_fro() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bcs_diagonal_form() {
        let tol = Tolerances::default();
        let f = bcs(0.5);
        let bt = diagonalize(&f, &tol).unwrap();
        let df = diagonal_form(&bt, &tol);
        let alpha = 0.75f64.sqrt();
        assert!((df.zero_point_energy.re - alpha).abs() < 1e-12);
        assert!(df.commutation_residual() < 1e-12);
        assert!(df.reconstruction_residual(&f.extended_matrix()) < 1e-12);
        assert!(df.adjoint_residuals().iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn complex_modes_fail_adjoint_relation() {
        let tol = Tolerances::default();
        let f = bcs(1.2);
        let bt = diagonalize(&f, &tol).unwrap();
        let df = diagonal_form(&bt, &tol);
        assert!(df.hermitian_flags.iter().all(|&h| !h));
        assert!(df.adjoint_residuals().iter().all(|&r| r > 0.1));
        assert!(df.commutation_residual() < 1e-12);
        assert!(df.reconstruction_residual(&f.extended_matrix()) < 1e-12);
    }

    #[test]
    fn coordinate_form_scaled() {
        let tol = Tolerances::default();
        let f = bcs(0.5);
        let bt = diagonalize(&f, &tol).unwrap();
        let cd = coordinate_diagonal(&f.extended_matrix(), &bt, &tol);
        for i in 0..2 {
            assert!((cd.t_prime[i] - bt.lambdas[i]).norm() < 1e-12);
            assert!((cd.v_prime[i] - bt.lambdas[i]).norm() < 1e-12);
        }
        assert!(cd.product_residual < 1e-12);
        assert!(cd.off_diagonal < 1e-12);
    }

    #[test]
    fn label_swap_keeps_normalization() {
        let tol = Tolerances::default();
        let f = bcs(1.2);
        let bt = diagonalize(&f, &tol).unwrap();
        let sw = swap_mode_labels(&bt, 0).unwrap();
        assert!(sw.symplectic_residual() < 1e-12);
        assert!(sw.diagonalization_residual(f.extended_matrix().as_matrix()) < 1e-12);
        assert_eq!(sw.lambdas[0], -bt.lambdas[0]);
    }
}
