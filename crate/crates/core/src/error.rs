use thiserror::Error;

use crate::liealg::{Flavor, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("flavor mismatch: {left} vs {right}")]
    FlavorMismatch { left: String, right: String },

    #[error("generator {generator} is not part of {flavor}")]
    IllegalGenerator { generator: Generator, flavor: String },

    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("twist index must be nonzero")]
    ZeroTwistIndex,

    #[error("element does not lie in (t-1)sbar: {0}")]
    NotInA1(String),

    #[error("operator mixes weight shifts {0} and {1}")]
    MixedWeightShift(i64, i64),

    #[error("window [{lo}, {hi}] has empty interior at depth {depth}")]
    DegenerateWindow { lo: i64, hi: i64, depth: i64 },

    #[error("parameter {0} must be a rational value here")]
    NonNumericParameter(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol '{name}' at {pos}")]
    UnknownSymbol { pos: usize, name: String },

    #[error("{0}")]
    ContextMismatch(String),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),
}

impl Error {
    pub(crate) fn illegal(generator: Generator, flavor: Flavor) -> Self {
        Error::IllegalGenerator { generator, flavor: flavor.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
