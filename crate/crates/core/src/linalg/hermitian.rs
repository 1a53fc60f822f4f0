//! Hermitian eigensolvers.
//!
//! Two independent routes: cyclic Jacobi rotations (eigenvalues and vectors)
//! and Householder tridiagonalization followed by implicit QL (eigenvalues
//! only, cheaper for large matrices).

use alloc::vec::Vec;

use num_traits::Float;

use super::matrix::{CMatrix, C64};
use crate::error::Error;

pub struct Eigh {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: CMatrix,
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalization of a hermitian matrix.
pub fn jacobi_eigh(a: &CMatrix) -> Result<Eigh, Error> {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.norm_fro().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut converged = off_norm(&m) <= eps * scale;
    let mut sweeps = 0;
    while !converged {
        sweeps += 1;
        if sweeps > 60 {
            return Err(Error::NoConvergence { routine: "jacobi_eigh" });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let g = apq.norm();
                if g <= eps * eps * scale {
                    continue;
                }
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                let zeta = (beta - alpha) / (2.0 * g);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = -sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = apq / g;
                // J acts on columns p, q: col_p' = c col_p + s̃ col_q,
                // col_q' = −s̃* col_p + c col_q, with s̃ = s e^{−iφ}.
                let st = phase.conj() * s;
                let stc = st.conj();
                for i in 0..n {
                    let (x, y) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = x * c + st * y;
                    m[(i, q)] = -stc * x + y * c;
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * c + st * y;
                    v[(i, q)] = -stc * x + y * c;
                }
                for j in 0..n {
                    let (x, y) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = x * c + stc * y;
                    m[(q, j)] = -st * x + y * c;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
            }
        }
        converged = off_norm(&m) <= eps * scale;
    }
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    Ok(Eigh {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: v.select_columns(&order),
    })
}

/// Eigenvalues of a hermitian matrix, ascending.
pub fn eigvalsh(a: &CMatrix) -> Result<Vec<f64>, Error> {
    let (mut d, mut e) = tridiagonalize(a);
    tql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction to real symmetric tridiagonal form.
/// Returns the diagonal and the moduli of the sub-diagonal (last entry 0).
fn tridiagonalize(a: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    if n > 2 {
        for k in 0..n - 2 {
            let tail: f64 = (k + 2..n).map(|i| m[(i, k)].norm_sqr()).sum();
            if tail == 0.0 {
                continue;
            }
            let x0 = m[(k + 1, k)];
            let xnorm = (tail + x0.norm_sqr()).sqrt();
            let phase = if x0.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let mut v = alloc::vec![C64::new(0.0, 0.0); n];
            for i in k + 1..n {
                v[i] = m[(i, k)];
            }
            v[k + 1] += phase * xnorm;
            let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let tau = 2.0 / vv;
            let p: Vec<C64> = m.apply(&v).into_iter().map(|z| z * tau).collect();
            let vp: C64 = v.iter().zip(&p).map(|(a, b)| a.conj() * b).sum();
            let kfac = vp * (tau * 0.5);
            let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kfac * vi).collect();
            for i in k..n {
                for j in k..n {
                    let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                    m[(i, j)] -= upd;
                }
            }
        }
    }
    let d = (0..n).map(|i| m[(i, i)].re).collect();
    let e = (0..n)
        .map(|i| if i + 1 < n { m[(i + 1, i)].norm() } else { 0.0 })
        .collect();
    (d, e)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix;
/// `e[i]` couples `d[i]` and `d[i + 1]`. Eigenvalues overwrite `d`.
fn tql(d: &mut [f64], e: &mut [f64]) -> Result<(), Error> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence { routine: "tql" });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
