/// Numerical thresholds shared by the pipeline.
///
/// Spectral thresholds are relative to `‖𝓜𝓗‖_F`; structural ones to the norm
/// of the matrix being checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity of `A`, symmetry of `B`.
    pub structure: f64,
    /// Eigenpair residuals, reality of eigenvalues, positivity of `𝓗`.
    pub eig: f64,
    /// Distance between `λ` and `−λ'` accepted by the pairing step.
    pub pair: f64,
    /// Singular value threshold for numerical rank.
    pub rank: f64,
    /// Smallest acceptable generalized norm.
    pub null: f64,
    /// Eigenvalues closer than this are treated as one cluster.
    pub cluster: f64,
    /// Neighborhood of a critical point inside which warnings are raised.
    pub grid: f64,
    /// Propagator identities, relative to the propagator norms.
    pub evo: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structure: 1e-12,
            eig: 1e-9,
            pair: 1e-8,
            rank: 1e-9,
            null: 1e-12,
            cluster: 1e-6,
            grid: 1e-7,
            evo: 1e-9,
        }
    }
}
