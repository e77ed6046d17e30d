use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar the arithmetic layer is generic over.
///
/// Implemented for every signed integer type with the usual numeric traits,
/// so `i64`, `i128` and [`num_bigint::BigInt`] all qualify. Fixed-width
/// types are fine for desk-sized rings; the crate-level aliases use
/// `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Hash + Debug + Display + Send + Sync + 'static
{
    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("scalar type too narrow for value")
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type too narrow for value")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

