use thiserror::Error;

/// Errors surfaced by the algebra kernel and the dynamics layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division is not exact: obstruction at {0}")]
    NonDivisible(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("term ceiling exceeded: {terms} terms > limit {limit}")]
    ResourceLimit { terms: usize, limit: usize },

    #[error("element is not invertible; gcd with modulus is {gcd}")]
    NotInvertible { gcd: String },

    #[error("number field moduli differ")]
    ModulusMismatch,

    #[error("degenerate map: Res(F,G)=0")]
    DegenerateMap,

    #[error("pole at point: {0}")]
    PoleAtPoint(String),

    #[error("point is not periodic with period dividing {0}")]
    NotPeriodic(u32),

    #[error("map has degree {0}, expected 2")]
    DegreeNot2(u32),

    #[error("not an automorphism of the map")]
    NotAnAutomorphism,

    #[error("automorphism order {0} is not prime")]
    NonPrimeOrder(String),

    #[error("out of formula range: {0}")]
    OutOfFormulaRange(String),

    #[error("parameter values lie on the excluded locus {0} = 0")]
    ExcludedLocus(String),

    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
