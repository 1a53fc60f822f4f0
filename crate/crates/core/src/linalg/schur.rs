//! Complex Schur decomposition `A = Z T Z†` by Householder reduction to
//! Hessenberg form followed by implicit single-shift QR sweeps.

use alloc::vec::Vec;

use num_traits::{Float, Zero};

use super::matrix::{CMatrix, C64};
use crate::error::Error;

pub struct Schur {
    /// Upper triangular factor; its diagonal holds the eigenvalues.
    pub t: CMatrix,
    /// Unitary Schur vectors.
    pub z: CMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.t.diagonal()
    }
}

/// Unitary reduction to upper Hessenberg form. Returns `(H, Q)` with `A = Q H Q†`.
pub fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if tail == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vv = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let tau = 2.0 / vv;

        // H <- P H on rows k+1.., columns k..
        for j in k..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(m, vm)| vm.conj() * h[(k + 1 + m, j)])
                .sum();
            let s = s * tau;
            for (m, vm) in v.iter().enumerate() {
                h[(k + 1 + m, j)] -= vm * s;
            }
        }
        // H <- H P and Q <- Q P on columns k+1..
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let s: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(m, vm)| mat[(i, k + 1 + m)] * vm)
                    .sum();
                let s = s * tau;
                for (m, vm) in v.iter().enumerate() {
                    mat[(i, k + 1 + m)] -= s * vm.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::zero();
        }
    }
    (h, q)
}

/// Rotation `G = [[c, s], [-s̄, c]]` with real `c` such that `G [x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::zero());
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    let phase = x / ax;
    (ax / r, phase * y.conj() / r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let m1 = mid + disc;
    let m2 = mid - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

pub fn schur(a: &CMatrix) -> Result<Schur, Error> {
    let n = a.rows();
    let (mut h, mut z) = hessenberg(a);
    if n < 2 {
        return Ok(Schur { t: h, z });
    }
    let eps = f64::EPSILON;
    let small = f64::MIN_POSITIVE * (n as f64 / eps);
    let anorm = h.norm_fro();
    let max_total = 100 * n.max(4);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = anorm;
            }
            if sub <= eps * s || sub <= small {
                h[(l, l - 1)] = C64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if total > max_total {
            return Err(Error::NoConvergence { routine: "schur" });
        }

        let shift = if its.is_multiple_of(10) {
            // exceptional shift breaks symmetric stalls
            let sub = h[(hi, hi - 1)].norm();
            let turn = if (its / 10) % 2 == 1 {
                C64::new(0.75 * sub, 0.0)
            } else {
                C64::new(0.0, 0.75 * sub)
            };
            h[(hi, hi)] + turn
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            let first_col = if k > l { k - 1 } else { l };
            for j in first_col..n {
                let a0 = h[(k, j)];
                let b0 = h[(k + 1, j)];
                h[(k, j)] = a0 * c + s * b0;
                h[(k + 1, j)] = -s.conj() * a0 + b0 * c;
            }
            if k > l {
                h[(k + 1, k - 1)] = C64::zero();
            }
            let last_row = (k + 2).min(hi);
            for i in 0..=last_row {
                let a0 = h[(i, k)];
                let b0 = h[(i, k + 1)];
                h[(i, k)] = a0 * c + b0 * s.conj();
                h[(i, k + 1)] = -a0 * s + b0 * c;
            }
            for i in 0..n {
                let a0 = z[(i, k)];
                let b0 = z[(i, k + 1)];
                z[(i, k)] = a0 * c + b0 * s.conj();
                z[(i, k + 1)] = -a0 * s + b0 * c;
            }
        }
    }
    // Clean the strictly lower triangle.
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = C64::zero();
        }
    }
    Ok(Schur { t: h, z })
}

pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>, Error> {
    Ok(schur(a)?.eigenvalues())
}
