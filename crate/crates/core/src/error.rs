use thiserror::Error;

use crate::exactfield::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("splitting type must have rank at least 1")]
    EmptySplittingType,
    #[error("marked point {0} appears more than once")]
    DuplicatePoint(Scalar),
    #[error("residue at {point} is {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        point: Scalar,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("no residue given for marked point {0}")]
    MissingResidue(Scalar),
    #[error("residue given for {0}, which is not a marked point")]
    UnexpectedResidue(Scalar),
    #[error("expected {expected} residue values, got {got}")]
    ResidueCount { expected: usize, got: usize },
    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported schema version {0:?} (expected \"v1\")")]
    UnsupportedVersion(String),
    #[error("residue at {0} is not rigid")]
    NotRigid(Scalar),
    #[error("residue at {point} does not preserve summand {summand}")]
    SummandNotPreserved { point: Scalar, summand: usize },
    #[error("no logarithmic connection with the prescribed residues: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
