//! Exact homogeneous weights on finite Frobenius rings.
//!
//! Rings are small and concrete: every element is a dense index and the
//! arithmetic is either tabulated or computed from a structured description
//! (residue rings, Galois fields, matrix rings, direct products, explicit
//! tables). On top of that sit additive characters, the normalized
//! homogeneous weight, the partitions it induces and their left/right
//! character-theoretic duals. Nothing here uses floating point: character
//! sums live in `Z[ζ_N]` and weights are reduced rationals.
//!
//! The arithmetic layer is generic over an integer scalar (see [`Scalar`]);
//! the aliases below fix it to arbitrary precision, which is what the rest
//! of the crate and the CLI use.

pub mod characters;
pub mod cyclotomic;
pub mod duality;
mod error;
pub mod homogeneous;
pub mod partitions;
pub mod ring;
mod scalar;

pub use characters::Character;
pub use cyclotomic::Cyclotomic;
pub use duality::KrawtchoukTable;
pub use error::{Error, Result};
pub use homogeneous::{RankProfile, WeightTable};
pub use partitions::Partition;
pub use ring::{Element, FactorSpec, FiniteRing, IdealSet, IdealSide, Limits, Ring, Side};
pub use scalar::Scalar;

/// Arbitrary-precision integer used for all exact values.
pub type Integer = num_bigint::BigInt;
/// Element of `Z[ζ_N]` with arbitrary-precision coefficients.
pub type CycInt = Cyclotomic<Integer>;
/// Reduced rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::Ratio<Integer>;
