use thiserror::Error;

/// Errors raised by the group-theoretic and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no root of unity of order {order} within {tol} of {value}")]
    NoSnap { value: String, order: u64, tol: f64 },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("theta type {0} is not even")]
    OddType(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("matrix is not in the orthogonal group of the {0} form")]
    NotOrthogonal(String),

    #[error("element is not a member of {0}")]
    NotMember(String),

    #[error("character solve found {0} solutions, expected exactly one")]
    NonUnique(usize),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),

    #[error("branch resolution failed: sign ratio {0} is not within 1e-6 of +1 or -1")]
    BranchResolutionFailure(String),

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("Im(tau) = {im} is below the precision floor {floor}")]
    TauTooLow { im: f64, floor: f64 },

    #[error("convention flip: run fixed {fixed}, query measured {measured}")]
    ConventionFlip { fixed: String, measured: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
