//! Brute-force reference: the form as a dense matrix on a truncated
//! occupation-number basis, diagonalized by a hermitian solver that shares
//! nothing with the spectral pipeline.
//!
//! The basis is lexicographic in `(n₁, …, n_N)`, `0 ≤ n_i ≤ n_max`, with the
//! last mode varying fastest. The truncated matrix is the compression of `H`
//! onto that subspace, so its eigenvalues are variational upper bounds.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::Error;
use crate::form::QuadraticForm;
use crate::linalg::{eigvalsh, CMatrix, C64};
use crate::spectral::{classify, Classification};
use crate::tolerance::Tolerances;

pub const DEFAULT_DIMENSION_CAP: usize = 20_000;

#[derive(Debug, Clone)]
pub struct FockTruncation {
    pub n_max: usize,
    pub n_modes: usize,
    pub dim: usize,
    pub matrix: CMatrix,
}

impl FockTruncation {
    /// Occupation numbers of basis state `index`.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        decode(index, self.n_modes, self.n_max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.matrix.distance(&self.matrix.adjoint())
    }

    /// Ascending spectrum.
    pub fn spectrum(&self) -> Result<Vec<f64>, Error> {
        eigvalsh(&self.matrix)
    }
}

fn decode(mut index: usize, modes: usize, n_max: usize) -> Vec<usize> {
    let base = n_max + 1;
    let mut occ = vec![0; modes];
    for slot in occ.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    occ
}

fn encode(occ: &[usize], n_max: usize) -> usize {
    occ.iter().fold(0, |acc, &k| acc * (n_max + 1) + k)
}

pub fn fock_hamiltonian(f: &QuadraticForm, n_max: usize) -> Result<FockTruncation, Error> {
    fock_hamiltonian_capped(f, n_max, DEFAULT_DIMENSION_CAP)
}

pub fn fock_hamiltonian_capped(
    f: &QuadraticForm,
    n_max: usize,
    cap: usize,
) -> Result<FockTruncation, Error> {
    if n_max == 0 {
        return Err(Error::InvalidParameters("n_max must be at least 1"));
    }
    let n = f.n_modes();
    let dim = (n_max + 1)
        .checked_pow(n as u32)
        .filter(|&d| d <= cap)
        .ok_or(Error::DimensionCap {
            dim: (n_max as f64 + 1.0).powi(n as i32) as usize,
            cap,
        })?;
    let (a, b) = (f.a(), f.b());
    let mut h = CMatrix::zeros(dim, dim);
    let sq = |k: usize| (k as f64).sqrt();
    for col in 0..dim {
        let occ = decode(col, n, n_max);
        let mut diag = C64::new(0.0, 0.0);
        for i in 0..n {
            diag += a[(i, i)] * (occ[i] as f64 + 0.5);
        }
        h[(col, col)] += diag;
        for i in 0..n {
            for j in 0..n {
                // A_ij b†_i b_j, i ≠ j
                if i != j && occ[j] >= 1 && occ[i] < n_max {
                    let mut to = occ.clone();
                    to[j] -= 1;
                    to[i] += 1;
                    let amp = sq(occ[j]) * sq(occ[i] + 1);
                    h[(encode(&to, n_max), col)] += a[(i, j)] * amp;
                }
                // ½B_ij b†_i b†_j and its adjoint ½B*_ij b_j b_i
                let mut to = occ.clone();
                to[j] += 1;
                let amp_j = sq(to[j]);
                to[i] += 1;
                if to[i] > n_max || to[j] > n_max {
                    continue;
                }
                let amp = amp_j * sq(to[i]);
                let row = encode(&to, n_max);
                h[(row, col)] += b[(i, j)] * (0.5 * amp);
                h[(col, row)] += b[(i, j)].conj() * (0.5 * amp);
            }
        }
    }
    Ok(FockTruncation {
        n_max,
        n_modes: n,
        dim,
        matrix: h,
    })
}

/// Lowest truncated eigenvalue for each cutoff.
pub fn ground_energies(f: &QuadraticForm, cutoffs: &[usize]) -> Result<Vec<f64>, Error> {
    cutoffs
        .iter()
        .map(|&k| Ok(fock_hamiltonian(f, k)?.spectrum()?[0]))
        .collect()
}

pub fn strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

/// Non-increasing and bounded below by `limit` within `slack`.
pub fn converges_from_above(values: &[f64], limit: f64, slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + slack) && values.iter().all(|&v| v >= limit - slack)
}

/// Lowest `k` values of `Σλ_i(n_i + ½)` over occupations with
/// `Σn_i ≤ max_total`.
pub fn lattice_levels(lambdas: &[f64], max_total: usize, k: usize) -> Vec<f64> {
    let n = lambdas.len();
    let zero = 0.5 * lambdas.iter().sum::<f64>();
    let mut out = Vec::new();
    let mut occ = vec![0usize; n];
    loop {
        let total: usize = occ.iter().sum();
        if total <= max_total {
            out.push(zero + occ.iter().zip(lambdas).map(|(&c, l)| c as f64 * l).sum::<f64>());
        }
        // odometer over [0, max_total]^n
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort_by(f64::total_cmp);
                out.truncate(k);
                return out;
            }
            occ[pos] += 1;
            if occ[pos] <= max_total {
                break;
            }
            occ[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct FockReport {
    pub n_max: usize,
    pub fock_levels: Vec<f64>,
    pub lattice: Vec<f64>,
    pub max_deviation: f64,
    /// `Σλ_i/2`.
    pub zero_point: f64,
    pub lambdas: Vec<f64>,
}

pub fn fock_spectrum_check(
    f: &QuadraticForm,
    n_max: usize,
    k_levels: usize,
    tol: &Tolerances,
) -> Result<FockReport, Error> {
    let report = classify(f, tol)?;
    if report.classification != Classification::PositiveDefinite {
        return Err(Error::WrongRegime(report.classification));
    }
    let lambdas: Vec<f64> = report.mode_frequencies.iter().map(|l| l.re).collect();
    let lattice = lattice_levels(&lambdas, n_max / 2, k_levels);
    let spectrum = fock_hamiltonian(f, n_max)?.spectrum()?;
    let fock_levels: Vec<f64> = spectrum.into_iter().take(lattice.len()).collect();
    let max_deviation = fock_levels
        .iter()
        .zip(&lattice)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(FockReport {
        n_max,
        fock_levels,
        lattice,
        max_deviation,
        zero_point: 0.5 * lambdas.iter().sum::<f64>(),
        lambdas,
    })
}
