//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Domain errors (bad exponents, masses, partitions, grids) map to CLI exit
/// code 2; I/O and schema errors map to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("operation requires a finite exponent")]
    InfiniteExponent,

    #[error("operation requires p > 1, got p = {0}")]
    ExponentNotAboveOne(f64),

    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("beta must lie strictly inside (0, 1), got {0}")]
    BetaOutOfRange(f64),

    #[error("two-point values must be distinct")]
    EqualValues,

    #[error("weight at index {index} must be strictly positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weights must sum to 1 within 1e-12, got {0}")]
    WeightsNotNormalized(f64),

    #[error("a probability space needs at least 2 atoms, got {0}")]
    TooFewAtoms(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("partition block {0} is empty")]
    EmptyBlock(usize),

    #[error("atom {0} appears in more than one block")]
    OverlappingBlocks(usize),

    #[error("atom {0} is not covered by any block")]
    UncoveredAtom(usize),

    #[error("block refers to atom {atom} but the space has {atoms} atoms")]
    BlockIndexOutOfRange { atom: usize, atoms: usize },

    #[error("random variable is identically zero")]
    ZeroRandVar,

    #[error("random variable is constant")]
    ConstantRandVar,

    #[error("random variable must be real-valued")]
    ComplexValued,

    #[error("distribution mean must vanish, got {0}")]
    NonZeroMean(f64),

    #[error("distribution has an atom at value 0 (index {0}); strip zero atoms first")]
    ZeroValuedAtom(usize),

    #[error("mass at index {index} must be strictly positive, got {value}")]
    NonPositiveMass { index: usize, value: f64 },

    #[error("masses must sum to 1 within 1e-12, got {0}")]
    MassNotNormalized(f64),

    #[error("distribution values must be pairwise distinct (value {0} repeats)")]
    DuplicateValue(f64),

    #[error("a distribution needs at least {need} atoms, got {got}")]
    TooFewDistAtoms { need: usize, got: usize },

    #[error("subset enumeration is limited to {max} atoms, got {atoms}")]
    TooManyAtoms { atoms: usize, max: usize },

    #[error("matrix must be {expected}x{expected} to act on this space, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("point {x} lies outside [{lo}, {hi}]")]
    PointOutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("beta = {beta} is not a cell boundary of a {cells}-cell grid")]
    GridIncompatible { beta: f64, cells: usize },

    #[error("cell count {0} exceeds the supported limit {1}")]
    TooManyCells(usize, usize),

    #[error("exact pair refinement would need {0} cells (limit {1})")]
    RefinementTooLarge(usize, usize),

    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),

    #[error("target error {eps} is unattainable at this resolution; best achievable is {best}")]
    UnattainableEps { eps: f64, best: f64 },

    #[error("n must be >= 2, got {0}")]
    InvalidN(usize),

    #[error("optimizer options invalid: {0}")]
    InvalidOptions(&'static str),

    #[error("eigen solver failed: {0}")]
    EigenSolver(String),

    #[error("target norm {target} is outside the attainable range [{lo}, {hi}]")]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },

    #[error("invalid input: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Schema(_) => 1,
            _ => 2,
        }
    }
}
