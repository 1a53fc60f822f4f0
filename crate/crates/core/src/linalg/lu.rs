use alloc::vec::Vec;

use num_traits::Zero;

use super::matrix::{CMatrix, C64};

/// LU factorization with partial pivoting, `P A = L U`.
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` when a pivot is exactly zero.
    pub fn new(a: &CMatrix) -> Option<Self> {
        assert!(a.is_square());
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 {
                return None;
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if !f.is_zero() {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= f * u;
                    }
                }
            }
        }
        Some(Self { lu, perm })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                let xk = x[k];
                x[i] -= l * xk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                let xk = x[k];
                x[i] -= u * xk;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            out.set_column(j, &self.solve_vec(&b.column(j)));
        }
        out
    }
}

pub fn inverse(a: &CMatrix) -> Option<CMatrix> {
    Lu::new(a).map(|lu| lu.solve(&CMatrix::identity(a.rows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_complex_matrix() {
        let a = CMatrix::from_vec(
            3,
            3,
            alloc::vec![
                C64::new(0.0, 1.0),
                C64::new(2.0, 0.0),
                C64::new(1.0, -1.0),
                C64::new(3.0, 0.0),
                C64::new(0.5, 0.5),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(4.0, 2.0),
            ],
        );
        let inv = inverse(&a).unwrap();
        let id = &a * &inv;
        assert!(id.distance(&CMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn singular_matrix_has_no_lu() {
        let a = CMatrix::zeros(2, 2);
        assert!(Lu::new(&a).is_none());
    }
}
