//! Eigenanalysis of `𝓜𝓗`: clustering, Jordan structure, `(λ, −λ)` pairing,
//! generalized normalization and stability classification.
//!
//! Conventions:
//! - complex pairs: the member with `Im λ > 0` is the representative;
//! - real pairs: the member whose eigenvector has positive usual norm
//!   `W†𝓜W > 0` is the representative, so `λ_i` may be negative;
//! - modes are ordered by `(Re λ, Im λ)`;
//! - each `W_i` is phased so its first largest component is real positive.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::error::Error;
use crate::form::{bar, metric, swap, DynamicalMatrix, QuadraticForm};
use crate::linalg::{inverse, jacobi_eigh, schur, svd, CMatrix, C64};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    PositiveDefinite,
    StableNonPositive,
    UnstableComplex,
    NonDiagonalizable,
}

impl Classification {
    /// Small integer code used by the sweep output.
    pub fn code(self) -> u8 {
        match self {
            Classification::PositiveDefinite => 0,
            Classification::StableNonPositive => 1,
            Classification::UnstableComplex => 2,
            Classification::NonDiagonalizable => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::PositiveDefinite => "PositiveDefinite",
            Classification::StableNonPositive => "StableNonPositive",
            Classification::UnstableComplex => "UnstableComplex",
            Classification::NonDiagonalizable => "NonDiagonalizable",
        }
    }

    /// Bounded, quasiperiodic evolution.
    pub fn is_dynamically_stable(self) -> bool {
        matches!(
            self,
            Classification::PositiveDefinite | Classification::StableNonPositive
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Eigenvalues of `𝓜𝓗` that coincide within the cluster tolerance.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub center: C64,
    pub eigenvalues: Vec<C64>,
    pub algebraic: usize,
    pub geometric: usize,
    /// Size of the largest Jordan block.
    pub max_block: usize,
    /// Index of the cluster holding the negated eigenvalues (may be itself).
    pub partner: usize,
    /// Smallest singular value of `𝓜𝓗 − μ` kept as nonzero, divided by the
    /// rank threshold. Large values mean a clean rank decision.
    pub rank_gap: f64,
    null_basis: CMatrix,
}

impl EigenCluster {
    pub fn is_defective(&self) -> bool {
        self.geometric < self.algebraic
    }
}

/// Spectrum of `𝓜𝓗` with its multiplicity structure.
#[derive(Debug, Clone)]
pub struct SpectralAnalysis {
    pub eigenvalues: Vec<C64>,
    pub clusters: Vec<EigenCluster>,
    /// `|μ_c + μ_partner|` per cluster.
    pub pairing_residuals: Vec<f64>,
    /// `‖𝓜𝓗‖_F`, the scale of all spectral thresholds.
    pub scale: f64,
    pub tolerances: Tolerances,
}

impl SpectralAnalysis {
    pub fn is_diagonalizable(&self) -> bool {
        self.clusters.iter().all(|c| !c.is_defective())
    }

    pub fn max_jordan_block(&self) -> usize {
        self.clusters.iter().map(|c| c.max_block).max().unwrap_or(1)
    }

    /// Largest `|Im μ|` over cluster centers. Centers average out the
    /// `O(√ε)` splitting of defective eigenvalues.
    pub fn max_imag(&self) -> f64 {
        self.clusters
            .iter()
            .map(|c| c.center.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn first_defect(&self) -> Option<&EigenCluster> {
        self.clusters.iter().find(|c| c.is_defective())
    }

    fn eig_threshold(&self) -> f64 {
        self.tolerances.eig * self.scale
    }

    /// One representative per `(λ, −λ)` pair, chosen from the cluster
    /// centers alone: `Im λ > 0`, or `Re λ > 0` on the real axis.
    pub fn representatives(&self) -> Vec<C64> {
        let tau = self.eig_threshold();
        let mut reps = Vec::new();
        for (ci, c) in self.clusters.iter().enumerate() {
            if c.partner == ci {
                reps.extend(core::iter::repeat_n(c.center, c.algebraic / 2));
                continue;
            }
            let mu = c.center;
            let chosen = if mu.im.abs() > tau {
                mu.im > 0.0
            } else {
                mu.re > 0.0
            };
            if chosen {
                reps.extend(core::iter::repeat_n(mu, c.algebraic));
            }
        }
        sort_frequencies(&mut reps);
        reps
    }
}

fn sort_frequencies(v: &mut [C64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues, clusters, multiplicities and pairing of `𝓜𝓗`.
pub fn analyze(d: &DynamicalMatrix, tol: &Tolerances) -> Result<SpectralAnalysis, Error> {
    let dm = d.as_matrix();
    let dim = dm.rows();
    let eigenvalues = schur(dm)?.eigenvalues();
    let scale = dm.norm_fro().max(f64::MIN_POSITIVE);

    // single-linkage clustering
    let link = tol.cluster * scale;
    let mut label: Vec<usize> = (0..dim).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= link {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = label.clone();
    roots.sort_unstable();
    roots.dedup();

    let mut clusters = Vec::with_capacity(roots.len());
    for root in roots {
        let members: Vec<C64> = (0..dim)
            .filter(|&i| label[i] == root)
            .map(|i| eigenvalues[i])
            .collect();
        clusters.push(build_cluster(dm, members, scale, tol)?);
    }

    let pairing_residuals = pair_clusters(&mut clusters, scale, tol)?;
    Ok(SpectralAnalysis {
        eigenvalues,
        clusters,
        pairing_residuals,
        scale,
        tolerances: *tol,
    })
}

fn build_cluster(
    dm: &CMatrix,
    members: Vec<C64>,
    scale: f64,
    tol: &Tolerances,
) -> Result<EigenCluster, Error> {
    let dim = dm.rows();
    let m = members.len();
    let center = members.iter().sum::<C64>() / (m as f64);
    let spread = members
        .iter()
        .map(|z| (z - center).norm())
        .fold(0.0, f64::max);
    let theta = (tol.rank * scale).max(10.0 * spread);

    let shifted = shift(dm, center);
    let s = svd(&shifted)?;
    let rank = s.rank(theta);
    let geometric = dim - rank;
    let rank_gap = if rank > 0 {
        s.values[rank - 1] / theta
    } else {
        f64::INFINITY
    };
    let null_basis = s.null_space(theta);

    let mut max_block = 1;
    if geometric < m {
        let norm = shifted.norm_fro().max(1.0);
        let mut power = shifted.clone();
        let mut threshold = theta;
        let mut k = 1;
        while k < m {
            power = &power * &shifted;
            threshold *= norm;
            k += 1;
            let nullity = dim - svd(&power)?.rank(threshold);
            if nullity >= m {
                break;
            }
        }
        max_block = k;
    }

    Ok(EigenCluster {
        center,
        eigenvalues: members,
        algebraic: m,
        geometric: geometric.min(m),
        max_block,
        partner: usize::MAX,
        rank_gap,
        null_basis,
    })
}

fn shift(dm: &CMatrix, mu: C64) -> CMatrix {
    let mut s = dm.clone();
    for i in 0..s.rows() {
        s[(i, i)] -= mu;
    }
    s
}

/// Greedy nearest-negation matching of clusters of equal multiplicity.
fn pair_clusters(
    clusters: &mut [EigenCluster],
    scale: f64,
    tol: &Tolerances,
) -> Result<Vec<f64>, Error> {
    let limit = tol.pair * scale;
    let k = clusters.len();
    let mut residuals = alloc::vec![0.0; k];
    for c in 0..k {
        if clusters[c].partner != usize::MAX {
            continue;
        }
        let mu = clusters[c].center;
        let mut best: Option<(usize, f64)> = None;
        for p in 0..k {
            let free = clusters[p].partner == usize::MAX;
            let sizes_ok = if p == c {
                clusters[c].algebraic.is_multiple_of(2)
            } else {
                clusters[p].algebraic == clusters[c].algebraic
            };
            if !free || !sizes_ok {
                continue;
            }
            let r = (mu + clusters[p].center).norm();
            if best.is_none_or(|(_, br)| r < br) {
                best = Some((p, r));
            }
        }
        match best {
            Some((p, r)) if r <= limit => {
                clusters[c].partner = p;
                clusters[p].partner = c;
                residuals[c] = r;
                residuals[p] = r;
            }
            _ => {
                return Err(Error::PairingFailure {
                    eigenvalue: mu,
                    tolerance: limit,
                })
            }
        }
    }
    Ok(residuals)
}

/// An eigenvector pair `(W_i, W_ī)` of `𝓜𝓗` for `(λ_i, −λ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModePair {
    pub lambda: C64,
    pub w_plus: Vec<C64>,
    pub w_minus: Vec<C64>,
    /// Generalized norm is usable (before normalization) or equals one
    /// (after).
    pub norm_ok: bool,
    /// `λ` real and `W_ī = 𝓣W_i*`.
    pub hermitian_pair: bool,
}

impl ModePair {
    /// `W̄_ī 𝓜 W_i = W_īᵗ 𝓣𝓜 W_i`.
    pub fn generalized_norm(&self) -> C64 {
        bilinear(&self.w_minus, &self.w_plus)
    }

    /// `W_i† 𝓜 W_i`.
    pub fn usual_norm(&self) -> f64 {
        let n = self.w_plus.len() / 2;
        self.w_plus
            .iter()
            .enumerate()
            .map(|(a, z)| if a < n { z.norm_sqr() } else { -z.norm_sqr() })
            .sum()
    }
}

/// `yᵗ 𝓣𝓜 x`, the antisymmetric form behind the commutator of extraction rows.
pub fn bilinear(y: &[C64], x: &[C64]) -> C64 {
    let n = x.len() / 2;
    (0..n).map(|a| y[n + a] * x[a] - y[a] * x[n + a]).sum()
}

/// `𝓣 w*`.
pub fn conjugate_partner(w: &[C64]) -> Vec<C64> {
    let n = w.len() / 2;
    (0..2 * n).map(|a| w[(a + n) % (2 * n)].conj()).collect()
}

/// Paired eigenvectors of `𝓜𝓗`. Fails with [`Error::Defective`] when some
/// eigenvalue lacks a full set of eigenvectors.
pub fn eigen_pairs(
    d: &DynamicalMatrix,
    tol: &Tolerances,
) -> Result<(Vec<ModePair>, SpectralAnalysis), Error> {
    let analysis = analyze(d, tol)?;
    if let Some(c) = analysis.first_defect() {
        return Err(Error::Defective {
            eigenvalue: c.center,
            algebraic: c.algebraic,
            geometric: c.geometric,
        });
    }
    let n = d.n_modes();
    let h = d.extended();
    let h = h.as_matrix();
    let mmat = metric(n);
    let tmat = swap(n);
    let tau = analysis.eig_threshold();

    let mut pairs = Vec::with_capacity(n);
    for (ci, c) in analysis.clusters.iter().enumerate() {
        let x = &c.null_basis;
        if c.center.im.abs() <= tau {
            // Real cluster: keep the directions of positive usual norm.
            let g = &(&x.adjoint() * &mmat) * x;
            let g = (&g + &g.adjoint()).scale_real(0.5);
            let eg = jacobi_eigh(&g)?;
            let positive: Vec<usize> = (0..eg.values.len())
                .filter(|&k| eg.values[k] > tol.null)
                .collect();
            if positive.is_empty() {
                continue;
            }
            let mut y = x * &eg.vectors.select_columns(&positive);
            for (col, &k) in positive.iter().enumerate() {
                let s = 1.0 / eg.values[k].sqrt();
                for r in 0..y.rows() {
                    y[(r, col)] *= s;
                }
            }
            let rmat = &(&y.adjoint() * h) * &y;
            let rmat = (&rmat + &rmat.adjoint()).scale_real(0.5);
            let er = jacobi_eigh(&rmat)?;
            let w = &y * &er.vectors;
            for k in 0..w.cols() {
                let wp = phase_fixed(w.column(k));
                let wm = conjugate_partner(&wp);
                pairs.push(ModePair {
                    lambda: C64::new(er.values[k], 0.0),
                    w_plus: wp,
                    w_minus: wm,
                    norm_ok: true,
                    hermitian_pair: true,
                });
            }
        } else if c.center.im > 0.0 {
            let mirror = mirror_cluster(&analysis, ci);
            if c.center.re < -tau && mirror.is_some() {
                // generated from its mirror image below
                continue;
            }
            let partner = &analysis.clusters[c.partner];
            let mut found = complex_pairs(x, &partner.null_basis, h, &tmat, tol)?;
            for p in found.iter_mut() {
                balance(p, tol)?;
            }
            if c.center.re.abs() <= tau {
                for p in found.iter_mut() {
                    self_mirror_gauge(p);
                }
            } else if mirror.is_some() {
                let images: Vec<ModePair> = found.iter().map(mirror_pair).collect();
                pairs.extend(images);
            }
            pairs.extend(found);
        }
    }

    if pairs.len() != n {
        let worst = analysis
            .clusters
            .iter()
            .map(|c| c.center)
            .next()
            .unwrap_or_default();
        return Err(Error::PairingFailure {
            eigenvalue: worst,
            tolerance: tol.pair * analysis.scale,
        });
    }
    pairs.sort_by(|a, b| {
        a.lambda
            .re
            .total_cmp(&b.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
    });
    Ok((pairs, analysis))
}

/// Cluster at `−μ*` for a complex cluster at `μ`.
fn mirror_cluster(analysis: &SpectralAnalysis, ci: usize) -> Option<usize> {
    let c = &analysis.clusters[ci];
    let limit = analysis.tolerances.pair * analysis.scale;
    analysis
        .clusters
        .iter()
        .enumerate()
        .filter(|(k, m)| *k != ci && m.algebraic == c.algebraic)
        .map(|(k, m)| (k, (m.center + c.center.conj()).norm()))
        .filter(|&(_, r)| r <= limit)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
}

/// Normalizes a complex pair and spends the remaining freedom
/// `(W_i, W_ī) → (sW_i, W_ī/s)` on equal norms and a real positive leading
/// component of `W_i`.
fn balance(p: &mut ModePair, tol: &Tolerances) -> Result<(), Error> {
    let c = p.generalized_norm();
    if c.norm() < tol.null {
        return Err(Error::NullNorm {
            mode: 0,
            norm: c.norm(),
            tolerance: tol.null,
        });
    }
    let root = c.sqrt();
    for z in p.w_plus.iter_mut() {
        *z /= root;
    }
    for z in p.w_minus.iter_mut() {
        *z /= root;
    }
    let np = crate::linalg::vec_norm(&p.w_plus);
    let nm = crate::linalg::vec_norm(&p.w_minus);
    let s = leading_phase(&p.w_plus).conj() * (nm / np).sqrt();
    for z in p.w_plus.iter_mut() {
        *z *= s;
    }
    for z in p.w_minus.iter_mut() {
        *z /= s;
    }
    Ok(())
}

/// The mode at `−λ*` with `W_j = i𝓣W_i*`, `W_j̄ = i𝓣W_ī*`, which makes
/// `b'_j = −i b'_i†` and `b̄'_j = −i b̄'_i†`.
fn mirror_pair(p: &ModePair) -> ModePair {
    let i = C64::new(0.0, 1.0);
    ModePair {
        lambda: -p.lambda.conj(),
        w_plus: conjugate_partner(&p.w_plus).into_iter().map(|z| z * i).collect(),
        w_minus: conjugate_partner(&p.w_minus).into_iter().map(|z| z * i).collect(),
        norm_ok: p.norm_ok,
        hermitian_pair: false,
    }
}

/// For purely imaginary `λ` the mode is its own mirror; rephase so that
/// `W_i = i𝓣W_i*`.
fn self_mirror_gauge(p: &mut ModePair) {
    let image: Vec<C64> = conjugate_partner(&p.w_plus)
        .into_iter()
        .map(|z| z * C64::new(0.0, 1.0))
        .collect();
    let (k, _) = p
        .w_plus
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (k, z)| if z.norm() > acc.1 { (k, z.norm()) } else { acc });
    if p.w_plus[k].norm() == 0.0 {
        return;
    }
    let kappa = image[k] / p.w_plus[k];
    let half = C64::from_polar(1.0, kappa.arg() * 0.5);
    for z in p.w_plus.iter_mut() {
        *z *= half;
    }
    for z in p.w_minus.iter_mut() {
        *z /= half;
    }
}

/// Pairs for a complex cluster with basis `x` (eigenvalue λ) and partner
/// basis `y` (eigenvalue −λ).
fn complex_pairs(
    x: &CMatrix,
    y: &CMatrix,
    h: &CMatrix,
    tmat: &CMatrix,
    tol: &Tolerances,
) -> Result<Vec<ModePair>, Error> {
    let k = x.cols();
    if y.cols() != k {
        return Err(Error::Defective {
            eigenvalue: C64::new(0.0, 0.0),
            algebraic: k,
            geometric: y.cols().min(k),
        });
    }
    // G = yᵗ 𝓣𝓜 x
    let gram = CMatrix::from_fn(k, k, |i, j| bilinear(&y.column(i), &x.column(j)));
    let ginv = inverse(&gram).ok_or(Error::NullNorm {
        mode: 0,
        norm: 0.0,
        tolerance: tol.null,
    })?;
    // Dual basis y' with y'ᵗ 𝓣𝓜 x = I.
    let y_dual = y * &ginv.transpose();
    // Restricted generator R = y'ᵗ 𝓣𝓗 x.
    let th = tmat * h;
    let rmat = &(&y_dual.transpose() * &th) * x;
    let (p, lambdas) = if k == 1 {
        (CMatrix::identity(1), alloc::vec![rmat[(0, 0)]])
    } else {
        let s = schur(&rmat)?;
        let vt = triangular_eigenvectors(&s.t);
        let p = &s.z * &vt;
        (p, s.t.diagonal())
    };
    let pinv = inverse(&p).ok_or(Error::NotDiagonalizable)?;
    let wx = x * &p;
    let wy = &y_dual * &pinv.transpose();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let raw = wx.column(j);
        let phase = leading_phase(&raw);
        let wp: Vec<C64> = raw.iter().map(|z| z * phase.conj()).collect();
        let wm: Vec<C64> = wy.column(j).iter().map(|z| z * phase).collect();
        let pair = ModePair {
            lambda: lambdas[j],
            w_plus: wp,
            w_minus: wm,
            norm_ok: true,
            hermitian_pair: false,
        };
        out.push(pair);
    }
    Ok(out)
}

/// Eigenvectors of an upper triangular matrix, as columns.
fn triangular_eigenvectors(t: &CMatrix) -> CMatrix {
    let k = t.rows();
    let tiny = f64::EPSILON * t.norm_fro().max(f64::MIN_POSITIVE);
    let mut v = CMatrix::zeros(k, k);
    for c in 0..k {
        v[(c, c)] = C64::new(1.0, 0.0);
        for i in (0..c).rev() {
            let mut s = C64::new(0.0, 0.0);
            for j in i + 1..=c {
                s += t[(i, j)] * v[(j, c)];
            }
            let mut den = t[(i, i)] - t[(c, c)];
            if den.norm() < tiny {
                den = C64::new(tiny, 0.0);
            }
            v[(i, c)] = -s / den;
        }
    }
    v
}

/// Unit phase of the first component within rounding of the largest one.
fn leading_phase(w: &[C64]) -> C64 {
    let max = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let z = w
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-8))
        .copied()
        .unwrap_or(C64::new(1.0, 0.0));
    z / z.norm()
}

fn phase_fixed(w: Vec<C64>) -> Vec<C64> {
    let ph = leading_phase(&w).conj();
    w.into_iter().map(|z| z * ph).collect()
}

/// A normalized generalized Bogoliubov transformation `Z = 𝓦 Z'`.
#[derive(Debug, Clone)]
pub struct BogoliubovTransform {
    /// Columns `(W_1 … W_n, W_1̄ … W_n̄)`.
    pub w: CMatrix,
    /// `𝓜𝓦̄𝓜`.
    pub w_inv: CMatrix,
    pub lambdas: Vec<C64>,
    pub hermitian: Vec<bool>,
}

impl BogoliubovTransform {
    pub fn n_modes(&self) -> usize {
        self.lambdas.len()
    }

    pub fn w_plus(&self, i: usize) -> Vec<C64> {
        self.w.column(i)
    }

    pub fn w_minus(&self, i: usize) -> Vec<C64> {
        self.w.column(i + self.n_modes())
    }

    /// `‖𝓦𝓜𝓦̄ − 𝓜‖`.
    pub fn symplectic_residual(&self) -> f64 {
        let m = metric(self.n_modes());
        (&(&self.w * &m) * &bar(&self.w)).distance(&m)
    }

    /// `‖𝓦 𝓦⁻¹ − I‖`.
    pub fn inverse_residual(&self) -> f64 {
        (&self.w * &self.w_inv).distance(&CMatrix::identity(self.w.rows()))
    }

    /// `‖𝓦̄ − 𝓦†‖`; small exactly when all modes are real.
    pub fn adjoint_residual(&self) -> f64 {
        bar(&self.w).distance(&self.w.adjoint())
    }

    /// `‖𝓦̄𝓗𝓦 − diag(λ, λ)‖`.
    pub fn diagonalization_residual(&self, h: &CMatrix) -> f64 {
        let n = self.n_modes();
        let d = &(&bar(&self.w) * h) * &self.w;
        let mut target = CMatrix::zeros(2 * n, 2 * n);
        for (i, &l) in self.lambdas.iter().enumerate() {
            target[(i, i)] = l;
            target[(i + n, i + n)] = l;
        }
        d.distance(&target)
    }

    /// `W̄_j 𝓜 W_i` for all column pairs: equals `𝓜` when orthonormal.
    pub fn norm_matrix(&self) -> CMatrix {
        let m = metric(self.n_modes());
        &(&bar(&self.w) * &m) * &self.w
    }

    /// Rough condition number `‖𝓦‖_F ‖𝓦⁻¹‖_F / 2n`.
    pub fn condition(&self) -> f64 {
        self.w.norm_fro() * self.w_inv.norm_fro() / (self.w.rows() as f64)
    }
}

/// Rescales each pair to unit generalized norm and assembles `𝓦`.
pub fn normalize_pairs(pairs: &[ModePair], tol: &Tolerances) -> Result<BogoliubovTransform, Error> {
    let n = pairs.len();
    if n == 0 {
        return Err(Error::EmptyForm);
    }
    let mut w = CMatrix::zeros(2 * n, 2 * n);
    let mut lambdas = Vec::with_capacity(n);
    let mut hermitian = Vec::with_capacity(n);
    for (i, p) in pairs.iter().enumerate() {
        let (plus, minus) = if p.hermitian_pair {
            let c = p.usual_norm();
            if !(c > tol.null) {
                return Err(Error::NullNorm {
                    mode: i,
                    norm: c,
                    tolerance: tol.null,
                });
            }
            let s = 1.0 / c.sqrt();
            let plus: Vec<C64> = p.w_plus.iter().map(|z| z * s).collect();
            let minus = conjugate_partner(&plus);
            (plus, minus)
        } else {
            let c = p.generalized_norm();
            if c.norm() < tol.null {
                return Err(Error::NullNorm {
                    mode: i,
                    norm: c.norm(),
                    tolerance: tol.null,
                });
            }
            let s = C64::new(1.0, 0.0) / c.sqrt();
            (
                p.w_plus.iter().map(|z| z * s).collect(),
                p.w_minus.iter().map(|z| z * s).collect(),
            )
        };
        w.set_column(i, &plus);
        w.set_column(i + n, &minus);
        lambdas.push(p.lambda);
        hermitian.push(p.hermitian_pair);
    }
    let m = metric(n);
    let w_inv = &(&m * &bar(&w)) * &m;
    Ok(BogoliubovTransform {
        w,
        w_inv,
        lambdas,
        hermitian,
    })
}

/// [`eigen_pairs`] followed by [`normalize_pairs`].
pub fn diagonalize(form: &QuadraticForm, tol: &Tolerances) -> Result<BogoliubovTransform, Error> {
    let (pairs, _) = eigen_pairs(&form.dynamical_matrix(), tol)?;
    normalize_pairs(&pairs, tol)
}

/// Non-fatal findings attached to a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Defective spectrum whose eigenvalues are nevertheless real and nonzero.
    JordanWithRealSpectrum,
    /// Two distinct eigenvalue clusters nearly collide; a defective point is
    /// close in parameter space.
    NearDefective { separation: f64 },
    /// `𝓦` is badly conditioned.
    IllConditioned { condition: f64 },
    /// Generalized norm of a mode deviates from one.
    NormResidual { mode: usize, residual: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::JordanWithRealSpectrum => {
                f.write_str("eigenvalues all real and non-zero; Jordan blocks detected")
            }
            Warning::NearDefective { separation } => write!(
                f,
                "near a non-diagonalizable point: eigenvalue clusters {separation:e} apart"
            ),
            Warning::IllConditioned { condition } => {
                write!(f, "ill-conditioned transformation: condition ≈ {condition:e}")
            }
            Warning::NormResidual { mode, residual } => {
                write!(f, "mode {mode}: generalized norm off by {residual:e}")
            }
        }
    }
}

/// Stability verdict for a form.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub classification: Classification,
    /// Spectrum of `𝓗`, ascending.
    pub h_eigenvalues: Vec<f64>,
    /// One `λ_i` per pair, ordered by `(Re, Im)`.
    pub mode_frequencies: Vec<C64>,
    pub diagonalizable: bool,
    pub zero_mode_count: usize,
    pub max_jordan_block: usize,
    pub analysis: SpectralAnalysis,
    /// Present when diagonalizable.
    pub transform: Option<BogoliubovTransform>,
    pub warnings: Vec<Warning>,
}

impl StabilityReport {
    pub fn max_imag(&self) -> f64 {
        self.analysis.max_imag()
    }

    pub fn min_h_eigenvalue(&self) -> f64 {
        self.h_eigenvalues.first().copied().unwrap_or(0.0)
    }
}

pub fn classify(form: &QuadraticForm, tol: &Tolerances) -> Result<StabilityReport, Error> {
    let d = form.dynamical_matrix();
    let h = form.extended_matrix();
    let h_eigenvalues = jacobi_eigh(h.as_matrix())?.values;
    let analysis = analyze(&d, tol)?;
    let tau = analysis.eig_threshold();
    let mut warnings = Vec::new();

    let (mode_frequencies, transform) = if analysis.is_diagonalizable() {
        let (pairs, _) = eigen_pairs(&d, tol)?;
        let bt = normalize_pairs(&pairs, tol)?;
        let norms = bt.norm_matrix();
        for i in 0..bt.n_modes() {
            let r = (norms[(i, i)] - C64::new(1.0, 0.0)).norm();
            if r > tol.eig.sqrt() {
                warnings.push(Warning::NormResidual { mode: i, residual: r });
            }
        }
        let cond = bt.condition();
        if cond > 1.0 / tol.grid.sqrt() {
            warnings.push(Warning::IllConditioned { condition: cond });
        }
        (bt.lambdas.clone(), Some(bt))
    } else {
        (analysis.representatives(), None)
    };

    let diagonalizable = transform.is_some();
    let classification = if !diagonalizable {
        Classification::NonDiagonalizable
    } else if mode_frequencies.iter().any(|l| l.im.abs() > tau) {
        Classification::UnstableComplex
    } else if h_eigenvalues.first().is_some_and(|&m| m > tau) {
        Classification::PositiveDefinite
    } else {
        Classification::StableNonPositive
    };

    if !diagonalizable && analysis.max_imag() <= tau && mode_frequencies.iter().all(|l| l.norm() > tau) {
        warnings.push(Warning::JordanWithRealSpectrum);
    }
    if diagonalizable {
        let near = tol.grid.sqrt() * analysis.scale;
        let cl = &analysis.clusters;
        let mut sep = f64::INFINITY;
        for i in 0..cl.len() {
            for j in i + 1..cl.len() {
                sep = sep.min((cl[i].center - cl[j].center).norm());
            }
        }
        if sep < near {
            warnings.push(Warning::NearDefective { separation: sep });
        }
    }

    let zero_mode_count = mode_frequencies.iter().filter(|l| l.norm() <= tau).count();
    Ok(StabilityReport {
        classification,
        h_eigenvalues,
        mode_frequencies,
        diagonalizable,
        zero_mode_count,
        max_jordan_block: analysis.max_jordan_block(),
        analysis,
        transform,
        warnings,
    })
}

/// Eigenvector residual `‖𝓜𝓗 w − λ w‖`.
pub fn eigen_residual(d: &DynamicalMatrix, lambda: C64, w: &[C64]) -> f64 {
    let dw = d.as_matrix().apply(w);
    dw.iter()
        .zip(w)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
