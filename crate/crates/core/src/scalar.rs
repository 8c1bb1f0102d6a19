//! The coefficient ring abstraction.
//!
//! Every exact structure in this crate is generic over an integer-like ring
//! `T`. The computations that feed reports use [`num_bigint::BigInt`]; the
//! machine-integer instantiations are useful for quick experiments and for
//! property tests on small inputs.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact Euclidean coefficient ring with a total order compatible with
/// its sign.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient ring cannot represent an i64")
    }

    /// Whether `self` is a unit of the ring, i.e. `±1`.
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}
