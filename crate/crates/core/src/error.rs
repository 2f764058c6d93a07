use thiserror::Error;

/// Errors shared across the solver and harness modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Weights must be strictly positive rationals.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    /// An element index outside the ground set was used.
    #[error("element {0} is outside the ground set")]
    UnknownElement(usize),

    /// Dispersed-weight bases below 3 do not guarantee lex/weight equivalence.
    #[error("dispersal base must be at least 3, got {0}")]
    InvalidBase(u64),

    /// The instance exceeds the configured brute-force enumeration bound.
    #[error("instance size {size} exceeds the brute-force bound {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    /// Exhaustive axiom checking is restricted to small ground sets.
    #[error("ground set size {size} exceeds the exhaustive-check bound {limit}")]
    TooLarge { size: usize, limit: usize },

    /// A provided solution is not feasible for the instance.
    #[error("infeasible solution: {0}")]
    InvalidSolution(String),

    /// The solution is already lex-maximal; no improvement step exists.
    #[error("solution is already lex-maximal")]
    AlreadyLexMaximal,

    /// The stated index is not the smallest deficient index of the solution.
    #[error("solution is not deficient at class index {0}")]
    NotDeficientAtIndex(usize),

    /// No larger common independent set exists.
    #[error("no augmenting path: no larger common independent set exists")]
    NoAugmentation,

    /// The path search found a negative-cost cycle, so the input set cannot
    /// have been extreme.
    #[error("input set is not extreme: negative-cost cycle reachable in the exchangeability graph")]
    NotExtremeInput,

    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The generator could not satisfy the requested constraints.
    #[error("generation failed: {0}")]
    GenerationError(String),

    /// An internal consistency check failed; indicates a solver bug rather
    /// than bad input.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
