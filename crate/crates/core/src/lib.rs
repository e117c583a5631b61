//! Unitary k-tuples under simultaneous conjugation, made computable:
//! eigenvalue maps into symmetric products of the circle, word-trace orbit
//! invariants, commutant-driven decomposition into irreducibles, and
//! eigenspace flag configurations with their simplicial structure.
//!
//! All numerical code is generic over the [`scalar::Real`] scalar
//! (`f64` or `f32`); the aliases below fix the primary `f64` lane.

pub mod cmatrix;
pub mod commutant;
pub mod decompose;
pub mod eigen;
pub mod eigenmap;
pub mod error;
pub mod harris;
pub mod json;
pub mod nullspace;
pub mod orthonormal;
pub mod scalar;
pub mod similar;
pub mod unitary;
pub mod words;

pub use cmatrix::CMatrix;
pub use commutant::{commutant_basis, intertwiner_basis, is_irreducible, CommutantBasis};
pub use decompose::{decompose_irreducibles, Decomposition, Summand};
pub use eigen::{hermitian_eigen, singular_values, unitary_eigen};
pub use eigenmap::{
    eigenphases, eigenvalue_map, eigenvalue_map_with_tol, sym_distance,
    sym_distance_componentwise, PhaseMultiset,
};
pub use error::CoreError;
pub use harris::{
    angle_signature, apply_unitary, arrangements_close, configurations_close, degeneracy_map,
    face_map, harris_decompose, harris_reconstruct, matching_block_unitary, null_homotopy,
    principal_angles, random_arrangement, stabilize_arrangement, subspace_distance, HarrisBlock,
    HarrisConfiguration, MultiArrangement, PlaneArrangement,
};
pub use scalar::{Real, C};
pub use similar::{simultaneously_similar, SummandMatch, Verdict};
pub use unitary::{
    block_sum, check_unitary, conjugate, random_tuple, random_unitary, stabilize, UnitaryMatrix,
    UnitaryTuple,
};
pub use words::{
    effective_max_len, first_separating_word, signature, signature_budgeted, word_trace, Word,
    WordTraceSignature, DEFAULT_WORD_BUDGET,
};

/// Complex scalar over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Complex scalar over `f32`.
pub type C32 = num_complex::Complex<f32>;
pub type Matrix64 = CMatrix<f64>;
pub type Unitary64 = UnitaryMatrix<f64>;
pub type Tuple64 = UnitaryTuple<f64>;
pub type Phases64 = PhaseMultiset<f64>;
pub type Matrix32 = CMatrix<f32>;
pub type Unitary32 = UnitaryMatrix<f32>;
pub type Tuple32 = UnitaryTuple<f32>;
