//! Exact integer-matrix and lattice toolkit: Hermite and Smith normal forms
//! with unimodular transformations, LLL/BKZ-style reduction at desk scale,
//! shortest-vector enumeration, and Babai's nearest plane decoder.
//!
//! All integer arithmetic is exact; reduction quality bookkeeping
//! (Gram-Schmidt data) is kept in exact rationals.

mod babai;
mod enumeration;
mod matrix;
mod normal_form;
mod reduction;

pub use babai::babai_nearest_plane;
pub use enumeration::shortest_vector_enum;
pub use matrix::IntMatrix;
pub use normal_form::{hnf, snf, HnfResult, SnfResult};
pub use reduction::{bkz_reduce, lll_reduce};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("matrix is rank deficient (rank {rank} < {need})")]
    RankError { rank: usize, need: usize },
    #[error("dimension {0} exceeds the enumeration cap {1}")]
    DimensionCap(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}
