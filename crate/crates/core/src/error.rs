use num_bigint::BigInt;
use thiserror::Error;

use crate::divisor::InequalityWitness;
use crate::fan::FanViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid fan: {}", join(.0))]
    InvalidFan(Vec<FanViolation>),

    #[error("cone index {index} out of range for a fan with {count} cones")]
    ConeIndex { index: usize, count: usize },

    #[error("ray index {index} out of range for a fan with {count} rays")]
    RayIndex { index: usize, count: usize },

    #[error("ray {ray} is not a face of cone {cone}")]
    InvalidFlag { ray: usize, cone: usize },

    #[error("invalid orbit decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, got: usize },

    #[error("divisor is not globally generated: {}", join(.0))]
    NotGloballyGenerated(Vec<InequalityWitness>),

    #[error("divisor is not ample: {}", join(.0))]
    NotAmple(Vec<InequalityWitness>),

    #[error("symbol entry has zero coefficient")]
    ZeroCoefficient,

    #[error("not a uniformizer: valuation along the flag divisor is {0}, expected 1")]
    NotUniformizer(BigInt),

    #[error("exponent {0} is too large to raise a non-unit coefficient to")]
    ExponentOverflow(BigInt),

    #[error("Hirzebruch parameter must satisfy l >= 1, got {0}")]
    HirzebruchParameter(BigInt),

    #[error("parse error: {0}")]
    Parse(String),
}
