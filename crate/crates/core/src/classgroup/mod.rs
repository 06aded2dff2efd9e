//! Arithmetic in the ideal class group of an imaginary quadratic order.
//!
//! Ideal classes are represented exclusively by reduced primitive binary
//! quadratic forms `(a, b, c)` of negative discriminant; reduced forms are
//! canonical class representatives, so equality of classes is equality of
//! forms. The group law is Gauss composition followed by reduction.

mod form;
mod structure;

pub use form::{ext_gcd, kronecker_symbol, Discriminant, QuadForm, SplitResult};
pub use structure::{reduced_forms, ClassGroupStructure, StructureConfig};

use num_bigint::BigInt;
use thiserror::Error;

/// Errors from class group arithmetic and structure computation.
#[derive(Debug, Error)]
pub enum ClassGroupError {
    #[error("invalid discriminant {0}: must be negative and 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),
    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(BigInt, BigInt, BigInt),
    #[error("form ({a}, {b}, {c}) has discriminant {found}, expected {expected}")]
    DiscriminantMismatch {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        found: BigInt,
        expected: BigInt,
    },
    #[error("prime {0} is ramified in the order (divides the discriminant)")]
    Ramified(u64),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("cannot parse form: {0}")]
    Parse(String),
}
