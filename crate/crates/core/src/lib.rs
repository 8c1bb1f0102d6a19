//! Exact graded-module bookkeeping for Borel homology, Borel cohomology and
//! Tate cohomology of connective complex K-theory over `(Z/p)^n`.
//!
//! Every answer is a [`Decomposition`](grmod::Decomposition): a wedge of
//! standard building blocks, each with a multiplicity series kept as an exact
//! [`RationalFunction`](rational::RationalFunction). The [`resolve`] module is
//! an independent check: it rebuilds the building blocks from explicit free
//! resolutions over `Z[β]` and computes `Tor` degreewise by Smith normal form.

pub mod bg;
pub mod borel;
pub mod error;
pub mod grmod;
pub mod json;
pub mod laurent;
pub mod rational;
pub mod resolve;
pub mod scalar;
pub mod snf;
pub mod tate;

pub use error::{Error, Result};
pub use laurent::LaurentPolynomial;
pub use rational::{CoefficientTable, Direction, RationalFunction};
pub use scalar::Coefficient;

pub use num_bigint::BigInt;

/// Integer Laurent polynomial with arbitrary-precision coefficients.
pub type Laurent = LaurentPolynomial<BigInt>;
/// Exact rational function over the big integers.
pub type RatFn = RationalFunction<BigInt>;
/// Coefficient table over the big integers.
pub type Table = CoefficientTable<BigInt>;

/// Machine-integer instantiations, for quick experiments.
pub type LaurentI64 = LaurentPolynomial<i64>;
pub type RatFnI64 = RationalFunction<i64>;
pub type RatFnI128 = RationalFunction<i128>;
