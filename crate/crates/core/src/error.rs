use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// The `Display` text of each variant is the stable diagnostic surfaced by the
/// command-line tool; only the interpolated values vary with the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} {what}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix must have at least one alternative and one criterion")]
    EmptyMatrix,
    #[error("duplicate label \"{0}\"")]
    DuplicateLabel(String),
    #[error("empty label")]
    EmptyLabel,
    #[error("invalid value \"{0}\"")]
    InvalidValue(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed row on line {0}")]
    MalformedRow(usize),
    #[error("unknown direction token \"{0}\" (expected benefit or cost)")]
    UnknownDirectionToken(String),
    #[error("ragged row on line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("no survey responses")]
    EmptyInput,
    #[error("rating {rating} outside the scale {min}..={max}")]
    RatingOutOfRange { rating: f64, min: f64, max: f64 },
    #[error("not enough responses for group \"{group}\", item \"{item}\" (standard deviation needs at least 2)")]
    InsufficientData { group: String, item: String },
    #[error("group \"{group}\" has no response for item \"{item}\"")]
    MissingCell { group: String, item: String },

    #[error("weight count must be at least 1")]
    InvalidArity,
    #[error("degenerate matrix: no criterion discriminates between alternatives")]
    DegenerateMatrix,
    #[error("at least 2 alternatives are required, found {0}")]
    InsufficientRows(usize),
    #[error("criterion \"{0}\" has an all-zero column")]
    ZeroColumn(String),
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("invalid pairwise matrix: {0}")]
    InvalidPairwise(String),
    #[error("all weights zero")]
    AllZero,
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    #[error("weights must sum to 1, found {0}")]
    NotNormalized(f64),

    #[error("alternative \"{0}\" coincides with both the ideal and anti-ideal points")]
    DegenerateAlternative(String),

    #[error("perturbed weight {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("cannot lower a weight of 1: the remaining weights are all zero")]
    DegenerateBase,
    #[error("at least 3 alternatives are required, found {0}")]
    TooFewAlternatives(usize),
    #[error("invalid sensitivity grid: step {step}, max delta {max_delta}")]
    InvalidGrid { step: f64, max_delta: f64 },

    #[error("invalid json: {0}")]
    Json(String),
}
