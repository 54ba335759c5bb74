use thiserror::Error;

/// Errors raised by semigroup computations, constructions and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators have gcd {gcd}; the generated monoid has infinite complement")]
    NotNumerical { gcd: u64 },

    #[error("invalid generator {0}: generators must be at least 1")]
    InvalidGenerator(i64),

    #[error("{0} not a member")]
    NotMember(u64),

    #[error("invalid element {0}: length sets are defined for nonzero elements only")]
    InvalidElement(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("unsupported cardinality {0}: explicit constructions cover at most 3 lengths; use `search` for larger sets")]
    UnsupportedCardinality(usize),

    #[error("arithmetic overflow in {0}")]
    ArithmeticOverflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn checked_add(a: u64, b: u64, ctx: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::ArithmeticOverflow(ctx))
}

pub(crate) fn checked_mul(a: u64, b: u64, ctx: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::ArithmeticOverflow(ctx))
}
