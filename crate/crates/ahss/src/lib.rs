//! Exact integer-matrix algebra for homotopy-group tables: Smith normal
//! form, cellular homology, graded abelian groups, representation-ring
//! fixtures, and the degenerate spectral-sequence assembly.
//!
//! Matrix and Smith normal form code is generic over any exact signed
//! integer scalar (see [`matrix::Int`]); the crate-level alias [`Z`] fixes
//! arbitrary-precision integers for all public computations.

pub mod assemble;
pub mod chain;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod json;
pub mod matrix;
pub mod snf;

pub use assemble::{ahss_assemble, AhssResult, EXTENSION_WARNING};
pub use chain::{homology, ChainComplex};
pub use error::AhssError;
pub use fixtures::{rep_ring_abelian, rep_ring_fixture, GroupName};
pub use graded::{Annotation, GradedAbelianGroup, GroupEntry, Rank};
pub use matrix::{Int, IntMatrix, Z, ZMatrix};
pub use snf::{cokernel, rank, smith_normal_form, AbelianInvariants, SmithDecomposition};
