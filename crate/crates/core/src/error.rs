use crate::linalg::C64;
use crate::spectral::Classification;

/// Which half of the form failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormMatrix {
    A,
    B,
}

impl core::fmt::Display for FormMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            FormMatrix::A => "A",
            FormMatrix::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),

    #[error("a form needs at least one mode")]
    EmptyForm,

    #[error(
        "{matrix} violates its symmetry: ‖{matrix} − {matrix}{}‖ = {asymmetry:e} exceeds {tolerance:e} · ‖{matrix}‖ (‖{matrix}‖ = {norm:e})",
        if matches!(matrix, FormMatrix::A) { "†" } else { "ᵗ" }
    )]
    StructureViolation {
        matrix: FormMatrix,
        asymmetry: f64,
        norm: f64,
        tolerance: f64,
    },

    #[error("non-finite entry in {0}")]
    NonFinite(FormMatrix),

    #[error("eigenvalue {eigenvalue} has no partner −λ within {tolerance:e}")]
    PairingFailure { eigenvalue: C64, tolerance: f64 },

    #[error(
        "dynamical matrix is defective at λ ≈ {eigenvalue}: algebraic multiplicity {algebraic}, geometric {geometric}"
    )]
    Defective {
        eigenvalue: C64,
        algebraic: usize,
        geometric: usize,
    },

    #[error("generalized norm {norm:e} of mode {mode} is below {tolerance:e}")]
    NullNorm { mode: usize, norm: f64, tolerance: f64 },

    #[error("form is not diagonalizable; use the Jordan evolution instead")]
    NotDiagonalizable,

    #[error("propagator overflow: max |U| = {max_entry:e}")]
    Overflow { max_entry: f64 },

    #[error("step too large: residual {residual:e} exceeds the expected bound {bound:e}; increase steps")]
    StepTooLarge { residual: f64, bound: f64 },

    #[error("|Δ| = ε: the gap vanishes and u, v do not exist")]
    DegenerateGap,

    #[error("the maximally decoupled form needs |Δ| = ε and κ = 0")]
    NotDegenerate,

    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),

    #[error("Fock dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("Fock comparison requires a positive definite form, got {0}")]
    WrongRegime(Classification),

    #[error("{routine} did not converge")]
    NoConvergence { routine: &'static str },
}
