//! Linear and quadratic operators in the boson algebra, represented by their
//! coefficients on `Z = (b, b†)`.
//!
//! A linear operator is a row `r` with value `r·Z`. A quadratic operator is
//! `Zᵗ N Z + c` with `N` symmetric, which is automatically symmetrically
//! ordered; the constant carries everything normal ordering would move.

use alloc::vec::Vec;

use num_traits::Float;

use crate::form::{commutator_matrix, swap, ExtendedMatrix};
use crate::linalg::{dot, CMatrix, C64};

/// `r·Z` for a row `r` of length `2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator(pub Vec<C64>);

impl LinearOperator {
    pub fn coefficients(&self) -> &[C64] {
        &self.0
    }

    fn modes(&self) -> usize {
        self.0.len() / 2
    }

    /// Scalar `[r₁·Z, r₂·Z] = r₁ C r₂ᵗ`.
    pub fn commutator(&self, other: &Self) -> C64 {
        let n = self.modes();
        (0..n)
            .map(|i| self.0[i] * other.0[n + i] - self.0[n + i] * other.0[i])
            .sum()
    }

    /// Formal adjoint: `(r·Z)† = r*·𝓣Z`.
    pub fn adjoint(&self) -> Self {
        let n = self.modes();
        Self((0..2 * n).map(|a| self.0[(a + n) % (2 * n)].conj()).collect())
    }

    /// `(r₁·Z)(r₂·Z)` as a symmetric quadratic operator.
    pub fn product(&self, other: &Self) -> QuadraticOperator {
        let raw = CMatrix::outer(&self.0, &other.0);
        let sym = (&raw + &raw.transpose()).scale_real(0.5);
        QuadraticOperator {
            n: sym,
            constant: self.commutator(other) * 0.5,
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `Zᵗ N Z + constant`, `N` symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticOperator {
    pub n: CMatrix,
    pub constant: C64,
}

impl QuadraticOperator {
    /// Operator with coefficient matrix `N` (symmetrized) and no constant
    /// beyond what symmetrization produces: `Zᵗ N Z` exactly.
    pub fn from_matrix(n: &CMatrix) -> Self {
        let sym = (n + &n.transpose()).scale_real(0.5);
        let c = commutator_matrix(n.rows() / 2);
        let mut constant = C64::new(0.0, 0.0);
        for a in 0..n.rows() {
            for b in 0..n.cols() {
                constant += n[(a, b)] * c[(a, b)];
            }
        }
        Self {
            n: sym,
            constant: constant * 0.5,
        }
    }

    /// `Z† K Z = Zᵗ 𝓣K Z`.
    pub fn from_hermitian_kernel(k: &CMatrix) -> Self {
        Self::from_matrix(&(&swap(k.rows() / 2) * k))
    }

    /// The form `H = ½ Z†𝓗Z` in symmetric ordering.
    pub fn hamiltonian(h: &ExtendedMatrix) -> Self {
        let m = h.as_matrix();
        Self {
            n: (&swap(m.rows() / 2) * m).scale_real(0.5),
            constant: C64::new(0.0, 0.0),
        }
    }

    pub fn modes(&self) -> usize {
        self.n.rows() / 2
    }

    /// `𝓣N`, the kernel of the operator sandwiched as `Z† (·) Z`.
    pub fn kernel(&self) -> CMatrix {
        &swap(self.modes()) * &self.n
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: &self.n + &other.n,
            constant: self.constant + other.constant,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            n: self.n.scale(s),
            constant: self.constant * s,
        }
    }

    /// `[Q₁, Q₂] = 2 Zᵗ(N₁CN₂ − N₂CN₁)Z`; the commutator of two quadratic
    /// operators has no constant term.
    pub fn commutator(&self, other: &Self) -> Self {
        let c = commutator_matrix(self.modes());
        let a = &(&self.n * &c) * &other.n;
        let b = &(&other.n * &c) * &self.n;
        Self {
            n: (&a - &b).scale_real(2.0),
            constant: C64::new(0.0, 0.0),
        }
    }

    /// Heisenberg picture `Q → Q(t)` for `Z(t) = U Z`: `N → Uᵗ N U`.
    pub fn evolve(&self, u: &CMatrix) -> Self {
        Self {
            n: &(&u.transpose() * &self.n) * u,
            constant: self.constant,
        }
    }

    /// Frobenius distance on `N` plus the constant difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.n.distance(&other.n) + (self.constant - other.constant).norm()
    }

    pub fn norm(&self) -> f64 {
        self.n.norm_fro() + self.constant.norm()
    }
}

/// `Σ r_a Z_a` evaluated at row vectors, used by the extraction tests.
pub fn apply_row(r: &[C64], u: &CMatrix) -> Vec<C64> {
    (0..u.cols()).map(|j| dot(r, &u.column(j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::QuadraticForm;
    use alloc::vec;

    fn unit(n2: usize, k: usize) -> LinearOperator {
        let mut v = vec![C64::new(0.0, 0.0); n2];
        v[k] = C64::new(1.0, 0.0);
        LinearOperator(v)
    }

    #[test]
    fn canonical_commutators() {
        let b = unit(2, 0);
        let bd = unit(2, 1);
        assert_eq!(b.commutator(&bd), C64::new(1.0, 0.0));
        assert_eq!(bd.commutator(&b), C64::new(-1.0, 0.0));
        assert_eq!(b.adjoint(), bd);
    }

    #[test]
    fn number_operator_constant() {
        // b†b = ½(b†b + bb†) − ½.
        let q = unit(2, 1).product(&unit(2, 0));
        assert_eq!(q.constant, C64::new(-0.5, 0.0));
        assert_eq!(q.n[(0, 1)], C64::new(0.5, 0.0));
    }

    #[test]
    fn oscillator_hamiltonian_matches_number_operator() {
        let f = QuadraticForm::new(
            CMatrix::from_vec(1, 1, vec![C64::new(2.0, 0.0)]),
            CMatrix::zeros(1, 1),
        )
        .unwrap();
        let h = QuadraticOperator::hamiltonian(&f.extended_matrix());
        // 2 (b†b + ½)
        let num = unit(2, 1).product(&unit(2, 0));
        let expect = num.scale(C64::new(2.0, 0.0)).add(&QuadraticOperator {
            n: CMatrix::zeros(2, 2),
            constant: C64::new(1.0, 0.0),
        });
        assert!(h.distance(&expect) < 1e-15);
    }

    #[test]
    fn quadratic_commutator_is_antisymmetric() {
        let n1 = CMatrix::from_fn(4, 4, |i, j| C64::new((i + 2 * j) as f64, (i * j) as f64));
        let n2 = CMatrix::from_fn(4, 4, |i, j| C64::new((i as f64 - j as f64).abs(), 1.0));
        let q1 = QuadraticOperator::from_matrix(&n1);
        let q2 = QuadraticOperator::from_matrix(&n2);
        let ab = q1.commutator(&q2);
        let ba = q2.commutator(&q1);
        assert!(ab.add(&ba).norm() < 1e-12);
    }
}
