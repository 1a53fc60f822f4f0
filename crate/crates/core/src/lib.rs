//! Diagonalization, stability analysis and exact evolution of quadratic
//! bosonic forms through generalized (non-unitary) Bogoliubov
//! transformations.
//!
//! `no_std` with `alloc`; all linear algebra is dense and self-contained.

#![no_std]
// `Float` supplies libm-backed float methods; whether inherent methods
// shadow it depends on the feature set the crate is built with.
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bcs;
pub mod error;
pub mod evolution;
pub mod form;
pub mod linalg;
pub mod normal_modes;
pub mod operator;
pub mod oracle;
pub mod spectral;
pub mod tolerance;

pub use bcs::{
    bcs_closed_evolution, bcs_form, bcs_jordan_form, bcs_lambda, bcs_sigma, bcs_thresholds,
    bcs_transform, bcs_uv, BcsLambda, BcsParams, BcsThresholds, JordanForm,
};
pub use error::Error;
pub use evolution::{growth_class, ode_cross_check, propagate, GrowthClass, GrowthKind, Propagator};
pub use form::{build_form, CoordinateForm, DynamicalMatrix, ExtendedMatrix, QuadraticForm};
pub use linalg::{CMatrix, RMatrix, C64};
pub use normal_modes::{
    coordinate_diagonal, diagonal_form, invariants, CoordinateDiagonalForm, DiagonalForm,
    InvariantSet,
};
pub use oracle::{fock_hamiltonian, fock_spectrum_check, FockReport, FockTruncation};
pub use spectral::{
    classify, diagonalize, eigen_pairs, normalize_pairs, BogoliubovTransform, Classification,
    ModePair, StabilityReport, Warning,
};
pub use tolerance::Tolerances;
