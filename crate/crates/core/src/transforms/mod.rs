//! Closed-form transform kernels, composition rules and matched-basis synthesis.

mod classical;
mod integer;
mod synth;
mod unitary;
mod wreath;

pub use classical::{
    compose_direct, dct2_matrix, dft_matrix, even_extension_isometry, haar_matrix,
    hartley_matrix, real_fourier_matrix, wht_by_kron, wht_matrix,
};
pub use integer::{
    anf_coefficients, arithmetic_matrix, best_polarity, fp_rm_matrix, rm_matrix, IntMatrix,
    IntTransform, Modulus, MAX_DENSE_VARS,
};
pub use synth::{
    central_projection_basis, synthesize_matched, CharacterTable, Synthesis, SYNTH_ATTEMPTS,
    SYNTH_MATCH_TOL,
};
pub use unitary::{ColumnLabel, UnitaryTransform, UNITARY_TOL};
pub use wreath::{helmert_matrix, semidirect_dct_cascade, wreath_matrix};
