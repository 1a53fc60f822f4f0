//! Quadratic bosonic forms
//!
//! `H = Σ A_ij (b†_i b_j + ½δ_ij) + ½ Σ (B_ij b†_i b†_j + B*_ij b_i b_j)`
//!
//! and the matrices built from them. Operator vectors are ordered
//! `Z = (b_1 … b_n, b†_1 … b†_n)`: annihilation block first.

use crate::error::{Error, FormMatrix};
use crate::linalg::{CMatrix, RMatrix, C64};
use crate::tolerance::Tolerances;

/// Commutation metric `𝓜 = diag(I, −I)`.
pub fn metric(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i < n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(-1.0, 0.0)
        }
    })
}

/// Block swap `𝓣 = [[0, I], [I, 0]]`.
pub fn swap(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if (i + n == j) || (j + n == i) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Commutator matrix `C_ab = [Z_a, Z_b] = (𝓜𝓣)_ab = [[0, I], [−I, 0]]`.
pub fn commutator_matrix(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i + n == j {
            C64::new(1.0, 0.0)
        } else if j + n == i {
            C64::new(-1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Unitary map to coordinates, `Z = 𝓢 (q, p)` with
/// `𝓢 = (1/√2) [[I, iI], [I, −iI]]`.
pub fn coordinate_transform(n: usize) -> CMatrix {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        if ii != jj {
            return C64::new(0.0, 0.0);
        }
        match (bi, bj) {
            (_, 0) => C64::new(r, 0.0),
            (0, 1) => C64::new(0.0, r),
            _ => C64::new(0.0, -r),
        }
    })
}

/// `𝓢†𝓜𝓢 = [[0, iI], [−iI, 0]]`, the metric in coordinates.
pub fn coordinate_metric(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i + n == j {
            C64::new(0.0, 1.0)
        } else if j + n == i {
            C64::new(0.0, -1.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `𝓦̄ = 𝓣 𝓦ᵗ 𝓣`.
pub fn bar(w: &CMatrix) -> CMatrix {
    let n = w.rows() / 2;
    let t = swap(n);
    &(&t * &w.transpose()) * &t
}

/// The (A, B) pair defining a quadratic form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    a: CMatrix,
    b: CMatrix,
}

/// Validates `(A, B)` with the default structural tolerance.
pub fn build_form(a: CMatrix, b: CMatrix) -> Result<QuadraticForm, Error> {
    QuadraticForm::new(a, b)
}

impl QuadraticForm {
    pub fn new(a: CMatrix, b: CMatrix) -> Result<Self, Error> {
        Self::with_tolerance(a, b, Tolerances::default().structure)
    }

    /// Rejects asymmetry above `tol` relative to the matrix norm and
    /// symmetrizes anything below it.
    pub fn with_tolerance(a: CMatrix, b: CMatrix, tol: f64) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("A is not square"));
        }
        if !b.is_square() {
            return Err(Error::DimensionMismatch("B is not square"));
        }
        if a.rows() != b.rows() {
            return Err(Error::DimensionMismatch("A and B differ in size"));
        }
        if a.rows() == 0 {
            return Err(Error::EmptyForm);
        }
        if !a.is_finite() {
            return Err(Error::NonFinite(FormMatrix::A));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite(FormMatrix::B));
        }
        let a_sym = a.adjoint();
        let b_sym = b.transpose();
        check(FormMatrix::A, &a, &a_sym, tol)?;
        check(FormMatrix::B, &b, &b_sym, tol)?;
        Ok(Self {
            a: (&a + &a_sym).scale_real(0.5),
            b: (&b + &b_sym).scale_real(0.5),
        })
    }

    pub fn from_real(a: &RMatrix, b: &RMatrix) -> Result<Self, Error> {
        Self::new(CMatrix::from_real(a), CMatrix::from_real(b))
    }

    pub fn n_modes(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    /// `𝓗 = [[A, B], [B*, Aᵗ]]`.
    pub fn extended_matrix(&self) -> ExtendedMatrix {
        ExtendedMatrix(CMatrix::from_blocks(
            &self.a,
            &self.b,
            &self.b.conj(),
            &self.a.transpose(),
        ))
    }

    /// `𝓜𝓗 = [[A, B], [−B*, −Aᵗ]]`.
    pub fn dynamical_matrix(&self) -> DynamicalMatrix {
        self.extended_matrix().dynamical()
    }

    /// `V = Re(A + B)`, `T = Re(A − B)`, `U = Im(B − A)`.
    pub fn coordinate_form(&self) -> CoordinateForm {
        CoordinateForm {
            v: (&self.a + &self.b).re(),
            t: (&self.a - &self.b).re(),
            u: (&self.b - &self.a).im(),
        }
    }
}

fn check(which: FormMatrix, m: &CMatrix, sym: &CMatrix, tol: f64) -> Result<(), Error> {
    let norm = m.norm_fro();
    let asymmetry = m.distance(sym);
    if asymmetry > tol * norm {
        return Err(Error::StructureViolation {
            matrix: which,
            asymmetry,
            norm,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Hermitian, bar-symmetric `2n × 2n` matrix of a form.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedMatrix(CMatrix);

impl ExtendedMatrix {
    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn n_modes(&self) -> usize {
        self.0.rows() / 2
    }

    /// `𝓜𝓗`, computed by negating the lower block rows.
    pub fn dynamical(&self) -> DynamicalMatrix {
        let n = self.n_modes();
        let mut d = self.0.clone();
        for i in n..2 * n {
            for j in 0..2 * n {
                d[(i, j)] = -d[(i, j)];
            }
        }
        DynamicalMatrix(d)
    }

    /// `‖𝓗 − 𝓗†‖`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.0.distance(&self.0.adjoint())
    }

    /// `‖𝓣𝓗ᵗ𝓣 − 𝓗‖`.
    pub fn bar_residual(&self) -> f64 {
        bar(&self.0).distance(&self.0)
    }

    /// Quadratic form in coordinates, `𝓗_c = 𝓢†𝓗𝓢`.
    pub fn to_coordinates(&self) -> CMatrix {
        let s = coordinate_transform(self.n_modes());
        &(&s.adjoint() * &self.0) * &s
    }
}

/// Generator `𝓜𝓗` of the Heisenberg evolution `dZ/dt = −i𝓜𝓗 Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix(CMatrix);

impl DynamicalMatrix {
    /// Wraps an arbitrary matrix; used by sweeps that perturb `𝓜𝓗` directly.
    pub fn from_matrix(m: CMatrix) -> Result<Self, Error> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch("dynamical matrix must be 2n × 2n"));
        }
        if m.rows() == 0 {
            return Err(Error::EmptyForm);
        }
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn n_modes(&self) -> usize {
        self.0.rows() / 2
    }

    /// Recovers `𝓗 = 𝓜 (𝓜𝓗)`.
    pub fn extended(&self) -> ExtendedMatrix {
        let n = self.n_modes();
        let mut h = self.0.clone();
        for i in n..2 * n {
            for j in 0..2 * n {
                h[(i, j)] = -h[(i, j)];
            }
        }
        ExtendedMatrix(h)
    }

    /// `‖𝓣(𝓜𝓗)ᵗ𝓣 + 𝓜(𝓜𝓗)𝓜‖`.
    pub fn structure_residual(&self) -> f64 {
        let m = metric(self.n_modes());
        let mdm = &(&m * &self.0) * &m;
        (&bar(&self.0) + &mdm).norm_fro()
    }
}

/// Coordinate representation `H = ½ (q, p) [[V, U], [Uᵗ, T]] (q, p)ᵗ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateForm {
    pub v: RMatrix,
    pub t: RMatrix,
    pub u: RMatrix,
}

impl CoordinateForm {
    pub fn n_modes(&self) -> usize {
        self.v.rows()
    }

    /// `[[V, U], [Uᵗ, T]]`.
    pub fn block_matrix(&self) -> RMatrix {
        RMatrix::from_blocks(&self.v, &self.u, &self.u.transpose(), &self.t)
    }

    /// `𝓗 = 𝓢 𝓗_c 𝓢†`.
    pub fn to_extended(&self) -> CMatrix {
        let s = coordinate_transform(self.n_modes());
        &(&s * &CMatrix::from_real(&self.block_matrix())) * &s.adjoint()
    }

    /// Largest asymmetry among `V`, `T` and the full block matrix.
    pub fn symmetry_residual(&self) -> f64 {
        let full = self.block_matrix();
        (&full - &full.transpose()).max_abs()
    }
}

/// Relative Frobenius distance `‖x − y‖ / max(1, ‖y‖)`.
pub fn relative_distance(x: &CMatrix, y: &CMatrix) -> f64 {
    x.distance(y) / y.norm_fro().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bcs(delta: f64) -> QuadraticForm {
        let a = RMatrix::from_vec(2, 2, vec![1.3, 0.0, 0.0, 0.7]);
        let b = RMatrix::from_vec(2, 2, vec![0.0, delta, delta, 0.0]);
        QuadraticForm::from_real(&a, &b).unwrap()
    }

    #[test]
    fn oscillator_matrices() {
        let f = QuadraticForm::new(
            CMatrix::from_vec(1, 1, vec![c(2.0, 0.0)]),
            CMatrix::zeros(1, 1),
        )
        .unwrap();
        assert_eq!(f.extended_matrix().as_matrix().diagonal(), vec![c(2.0, 0.0); 2]);
        assert_eq!(
            f.dynamical_matrix().as_matrix().diagonal(),
            vec![c(2.0, 0.0), c(-2.0, 0.0)]
        );
        let cf = f.coordinate_form();
        assert_eq!(cf.v[(0, 0)], 2.0);
        assert_eq!(cf.t[(0, 0)], 2.0);
        assert_eq!(cf.u[(0, 0)], 0.0);
    }

    #[test]
    fn non_hermitian_a_rejected() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]);
        let err = QuadraticForm::new(a, CMatrix::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, Error::StructureViolation { matrix: FormMatrix::A, .. }));
    }

    #[test]
    fn rounding_noise_symmetrized() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.5, 1e-15), c(0.5, 0.0), c(1.0, 0.0)]);
        let f = QuadraticForm::new(a, CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(f.a()[(0, 1)], f.a()[(1, 0)].conj());
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            QuadraticForm::new(CMatrix::zeros(2, 2), CMatrix::zeros(3, 3)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            QuadraticForm::new(CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)),
            Err(Error::EmptyForm)
        ));
        let mut bad = CMatrix::zeros(1, 1);
        bad[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(
            QuadraticForm::new(bad, CMatrix::zeros(1, 1)),
            Err(Error::NonFinite(FormMatrix::A))
        ));
    }

    #[test]
    fn bcs_blocks() {
        let f = bcs(0.5);
        let h = f.extended_matrix();
        let m = h.as_matrix();
        assert_eq!(m.diagonal(), vec![c(1.3, 0.0), c(0.7, 0.0), c(1.3, 0.0), c(0.7, 0.0)]);
        assert_eq!(m[(0, 3)], c(0.5, 0.0));
        assert_eq!(m[(1, 2)], c(0.5, 0.0));
        assert_eq!(m[(2, 1)], c(0.5, 0.0));
        assert_eq!(h.bar_residual(), 0.0);
        let cf = f.coordinate_form();
        assert_eq!(cf.v.as_slice(), &[1.3, 0.5, 0.5, 0.7]);
        assert_eq!(cf.t.as_slice(), &[1.3, -0.5, -0.5, 0.7]);
        assert!(cf.u.max_abs() == 0.0);
    }

    #[test]
    fn coordinate_round_trip() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.2, 0.3), c(0.2, -0.3), c(0.5, 0.0)]);
        let b = CMatrix::from_vec(2, 2, vec![c(0.1, 0.4), c(-0.2, 0.1), c(-0.2, 0.1), c(0.3, -0.7)]);
        let f = QuadraticForm::new(a, b).unwrap();
        let h = f.extended_matrix();
        let cf = f.coordinate_form();
        let hc = h.to_coordinates();
        assert!(hc.distance(&CMatrix::from_real(&cf.block_matrix())) < 1e-14);
        assert!(cf.to_extended().distance(h.as_matrix()) < 1e-14);
        assert!(cf.symmetry_residual() < 1e-15);
    }

    #[test]
    fn metric_identities() {
        let n = 3;
        let m = metric(n);
        let t = swap(n);
        assert_eq!(&m * &t, commutator_matrix(n));
        let s = coordinate_transform(n);
        assert!((&s.adjoint() * &s).distance(&CMatrix::identity(2 * n)) < 1e-15);
        assert!((&(&s.adjoint() * &m) * &s).distance(&coordinate_metric(n)) < 1e-15);
    }
}
