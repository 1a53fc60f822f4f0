//! Dense complex linear algebra.

pub mod expm;
pub mod hermitian;
pub mod lu;
pub mod matrix;
pub mod schur;
pub mod svd;

pub use expm::expm;
pub use hermitian::{eigvalsh, jacobi_eigh, Eigh};
pub use lu::{inverse, Lu};
pub use matrix::{dot, dotc, vec_norm, CMatrix, Matrix, RMatrix, C64};
pub use schur::{eigenvalues, schur, Schur};
pub use svd::{svd, Svd};
