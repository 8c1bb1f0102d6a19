use thiserror::Error;

use crate::grmod::{ModuleSymbol, SmashKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u32),

    #[error("series expansion {direction} needs a denominator with extreme coefficient ±1, found {coefficient}")]
    NonUnitLeadingTerm {
        direction: &'static str,
        coefficient: String,
    },

    #[error("no product rule for {a} ∧ {b} under {kind:?}")]
    UnsupportedPair {
        a: ModuleSymbol,
        b: ModuleSymbol,
        kind: SmashKind,
    },

    #[error("decompositions over different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),

    #[error("{0} has no finite free resolution in the oracle")]
    UnsupportedSymbol(ModuleSymbol),

    #[error("window [{lo}, {hi}] needs resolutions through degree {needed}, but they stop at {bound}")]
    WindowTooWide {
        lo: i64,
        hi: i64,
        needed: i64,
        bound: i64,
    },

    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("index {index} outside {range}")]
    IndexOutOfRange { index: i64, range: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
