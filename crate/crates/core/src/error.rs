//! Crate-wide error type.
//!
//! All operations share one error enum so that results compose across
//! modules (pair verification propagates desuperization errors, catalog
//! parsing propagates matrix validation errors, and so on).

use thiserror::Error;

/// Errors produced by matrix validation, classification, the super maps,
/// enumeration, geometry and catalog ingestion.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("diagonal entry at index {index} is {value}, must be 0, 1 or 2")]
    DiagonalOutOfRange { index: usize, value: String },

    #[error("off-diagonal entry ({row},{col}) is {value}, must be non-positive")]
    PositiveOffDiagonal {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("zero pattern is asymmetric at ({row},{col}): exactly one of the pair is zero")]
    ZeroPatternAsymmetric { row: usize, col: usize },

    #[error("explicit parity at index {index} disagrees with diagonal entry")]
    ParityMismatch { index: usize },

    #[error("parity sequence has length {len}, expected {expected}")]
    ParityLength { len: usize, expected: usize },

    #[error("rank too small: operation needs rank at least {min}")]
    RankTooSmall { min: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("empty index set")]
    EmptySet,

    #[error("matrix has a non-even index at {index}; operation requires an even matrix")]
    NotEven { index: usize },

    #[error("matrix is decomposable; operation requires an indecomposable matrix")]
    Decomposable,

    #[error("matrix has an odd isotropic index at {index}; not supported")]
    IsotropicUnsupported { index: usize },

    #[error("matrix has no odd index; nothing to desuperize")]
    NoOddIndex,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("permutation {0:?} is not a bijection on its index range")]
    NotABijection(Vec<usize>),

    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("matrix is not almost affine; pass the relax flag for exploratory use")]
    NotAlmostAffine,

    #[error("pair does not verify: H permuted by sigma differs from the desuperization of S")]
    PairMismatch,

    #[error("symmetrized matrix is not Lorentzian: signature ({pos},{neg},{zero})")]
    NotLorentzian { pos: usize, neg: usize, zero: usize },

    #[error("unsupported rank {rank}: enumeration covers ranks 3 through 10")]
    UnsupportedRank { rank: usize },

    #[error("catalog parse error: {0}")]
    ParseError(String),

    #[error("catalog entry {entry} invalid: {reason}")]
    ValidationError { entry: String, reason: String },

    #[error("entry at ({row},{col}) does not fit the JSON integer range")]
    EntryOutOfJsonRange { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
