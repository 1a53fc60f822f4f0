//! One-sided Jacobi singular value decomposition. Only singular values and
//! right singular vectors are produced; that is all rank and null-space
//! queries need.

use alloc::vec::Vec;

use num_traits::Float;

use super::matrix::{dotc, CMatrix, C64};
use crate::error::Error;

pub struct Svd {
    /// Singular values, descending.
    pub values: Vec<f64>,
    /// Right singular vectors as columns, in the order of `values`.
    pub v: CMatrix,
}

pub fn svd(a: &CMatrix) -> Result<Svd, Error> {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    let eps = f64::EPSILON;
    // Pairs of columns already at rounding level are left alone.
    let floor = (eps * a.norm_fro()).powi(2);
    // Rotations below this cosine are lost to rounding.
    let orth = eps * (m.max(1) as f64);
    let mut converged = false;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = dotc(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= floor || g <= orth * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = -sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = gamma / g;
                let sp = phase.conj() * s;
                let sq = phase * s;
                rotate(&mut cols, p, q, c, sp, sq);
                rotate(&mut v, p, q, c, sp, sq);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { routine: "svd" });
    }
    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let mut vm = CMatrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        vm.set_column(k, &v[j]);
    }
    Ok(Svd {
        values: order.iter().map(|&j| norms[j]).collect(),
        v: vm,
    })
}

/// `x_p ← c x_p + sp x_q`, `x_q ← −sq x_p + c x_q`.
fn rotate(x: &mut [Vec<C64>], p: usize, q: usize, c: f64, sp: C64, sq: C64) {
    let (head, tail) = x.split_at_mut(q);
    let xp = &mut head[p];
    let xq = &mut tail[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let (a0, b0) = (*a, *b);
        *a = a0 * c + sp * b0;
        *b = -sq * a0 + b0 * c;
    }
}

impl Svd {
    /// Number of singular values above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.values.iter().filter(|&&s| s > threshold).count()
    }

    /// Orthonormal basis of the numerical null space, as columns.
    pub fn null_space(&self, threshold: f64) -> CMatrix {
        let r = self.rank(threshold);
        let idx: Vec<usize> = (r..self.values.len()).collect();
        self.v.select_columns(&idx)
    }
}
