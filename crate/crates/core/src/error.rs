use core::fmt;

/// Errors produced by dataset validation and the graph/statistic operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate was NaN or infinite.
    NonFiniteCoordinate { row: usize, col: usize },
    /// A label was not 0 or 1.
    InvalidLabel { index: usize, value: u8 },
    /// Point buffer length is not `rows * dim`, or label count disagrees.
    ShapeMismatch { expected: usize, got: usize },
    /// Dataset has no rows (or dimension zero).
    EmptyDataset,
    /// An operation needed both classes but one is empty.
    DegenerateClass { m: usize, n: usize },
    /// Weight matrix failed symmetry / nonnegativity / zero-diagonal checks.
    InvalidWeights { reason: &'static str },
    /// Perfect matching requires an even vertex count.
    OddVertexCount { size: usize },
    /// The operation needs at least this many vertices.
    TooFewVertices { size: usize, min: usize },
    /// The matrix already carries a ghost vertex.
    GhostAlreadyPresent,
    /// The operation refuses ghost-augmented input.
    GhostPresent,
    /// Brute-force enumeration is capped to keep (size-1)!! tractable.
    BruteForceTooLarge { size: usize, max: usize },
    /// Edge set is not a perfect matching on the expected vertex set.
    NotPerfectMatching { reason: &'static str },
    /// Label vector length does not match the vertex set.
    LabelLengthMismatch { expected: usize, got: usize },
    /// Null variance is undefined for N <= 3.
    VarianceUndefined { n_total: usize },
    /// Monte Carlo routine asked for too few trials.
    TooFewTrials { trials: usize, min: usize },
    /// Prior probabilities must be positive and sum to one.
    InvalidPriors { c0: f64, c1: f64 },
    /// A probability vector had negative mass or did not sum to one.
    InvalidDistribution { which: &'static str, reason: &'static str },
    /// Argument fell outside its documented domain.
    OutOfDomain { what: &'static str, value: f64 },
    /// Histogram rule needs at least one training pair.
    EmptyTrainingSet,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFiniteCoordinate { row, col } => {
                write!(f, "non-finite coordinate at row {row}, column {col}")
            }
            Error::InvalidLabel { index, value } => {
                write!(f, "label at index {index} is {value}, expected 0 or 1")
            }
            Error::ShapeMismatch { expected, got } => {
                write!(f, "shape mismatch: expected {expected} values, got {got}")
            }
            Error::EmptyDataset => write!(f, "empty dataset"),
            Error::DegenerateClass { m, n } => {
                write!(f, "both classes must be nonempty (m={m}, n={n})")
            }
            Error::InvalidWeights { reason } => write!(f, "invalid weight matrix: {reason}"),
            Error::OddVertexCount { size } => {
                write!(f, "vertex count {size} is odd; add a ghost point first")
            }
            Error::TooFewVertices { size, min } => {
                write!(f, "need at least {min} vertices, got {size}")
            }
            Error::GhostAlreadyPresent => write!(f, "ghost point already present"),
            Error::GhostPresent => write!(f, "operation does not accept a ghost-augmented matrix"),
            Error::BruteForceTooLarge { size, max } => {
                write!(f, "brute force capped at {max} vertices, got {size}")
            }
            Error::NotPerfectMatching { reason } => write!(f, "not a perfect matching: {reason}"),
            Error::LabelLengthMismatch { expected, got } => {
                write!(f, "label vector length {got} does not match {expected} vertices")
            }
            Error::VarianceUndefined { n_total } => {
                write!(f, "null variance undefined for N={n_total} (needs N > 3)")
            }
            Error::TooFewTrials { trials, min } => {
                write!(f, "need at least {min} trials, got {trials}")
            }
            Error::InvalidPriors { c0, c1 } => {
                write!(f, "priors must be in (0,1) and sum to 1, got c0={c0}, c1={c1}")
            }
            Error::InvalidDistribution { which, reason } => {
                write!(f, "invalid distribution {which}: {reason}")
            }
            Error::OutOfDomain { what, value } => {
                write!(f, "{what} out of domain: {value}")
            }
            Error::EmptyTrainingSet => write!(f, "histogram rule needs a nonempty training set"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
