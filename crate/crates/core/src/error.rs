use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error("duplicate predictor value x = {0}")]
    DuplicateX(f64),

    #[error("input signal is empty")]
    EmptySignal,

    #[error("inverse transform left an imaginary residue of {residue:e} (bound {bound:e}); spectrum is not conjugate-symmetric")]
    ImaginaryResidue { residue: f64, bound: f64 },

    #[error("grid too coarse: x = {first} and x = {second} both map to node {node}")]
    GridCollision { first: f64, second: f64, node: usize },

    #[error("degenerate predictor range: all samples at x = {0}")]
    DegenerateRange(f64),

    #[error("grid size {0} must be a power of two")]
    NotPowerOfTwo(usize),

    #[error("split leaves no training samples (n = {0})")]
    NoTrainingSamples(usize),

    #[error("cannot restrict a signal of odd length {0}")]
    OddLength(usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("R² is undefined: truth has zero variance")]
    ZeroVariance,

    #[error("metric window incomplete: {have} of {need} values")]
    IncompleteWindow { have: usize, need: usize },
}
