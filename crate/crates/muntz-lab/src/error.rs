use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent list is empty")]
    EmptySequence,

    #[error("exponents must be strictly increasing: violation at index {index} (value {value})")]
    NotIncreasing { index: usize, value: f64 },

    #[error("exponents must be non-negative: negative value {value} at index {index}")]
    NegativeExponent { index: usize, value: f64 },

    #[error("exponent {value} at index {index} does not match the declared {family} family (expected {expected})")]
    FamilyMismatch {
        index: usize,
        value: f64,
        expected: f64,
        family: String,
    },

    #[error("invalid family parameter: {0}")]
    InvalidFamily(String),

    #[error("evaluation point {0} lies outside [0,1]")]
    OutOfDomain(f64),

    #[error("invalid interval [{lo}, {hi}]: must satisfy 0 <= lo <= hi <= 1")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error(
        "certification budget exhausted: gap {gap:.3e} > tol {tol:.3e} after {evals} evaluations"
    )]
    CertificationBudget { gap: f64, tol: f64, evals: usize },

    #[error("coefficient count {coeffs} exceeds sequence length {exponents}")]
    TooManyCoefficients { coeffs: usize, exponents: usize },

    #[error("derivative coefficient bound requires positive exponents >= 1, found {0}")]
    FractionalExponent(f64),

    #[error("linear program is unbounded: constraint grid does not pin down all coefficient directions")]
    UnboundedLp,

    #[error("linear program did not converge within {0} pivots")]
    LpIterationLimit(usize),

    #[error("constraint generation did not converge within {0} rounds")]
    CutIterationLimit(usize),

    #[error("estimator failed to produce a positive norm for the witness")]
    DegenerateWitness,

    #[error("invalid precondition: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
