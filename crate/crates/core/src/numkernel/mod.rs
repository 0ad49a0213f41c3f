//! Dense complex linear algebra used throughout the crate: Hermitian
//! eigendecomposition, singular values, Kronecker products, Cholesky-reduced
//! generalized eigenproblems, exact linear assignment and seeded sampling.

mod assign;
mod cmatrix;
mod eigen;
mod linalg;
mod rng;

pub use assign::{hungarian_max, ScoreMatrix};
pub use cmatrix::{CMatrix, C64};
pub use eigen::{herm_eig, herm_eigvals, HermEigResult, HERMITIAN_REL_TOL};
pub use linalg::{cholesky, gevp, gevp_min, kron, svd_singular_values, GevpSolution};
pub use rng::{random_psd, random_real_psd, GaussianStream};
