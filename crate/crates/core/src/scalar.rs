//! Scalar abstractions.
//!
//! Numeric code paths are generic over [`Real`] (`f32`, `f64`); exact
//! algebra is generic over [`ExactInt`] (`i64`, `i128`, `BigInt`). Exact
//! arithmetic goes through the checked operations so fixed-width backends
//! report overflow instead of wrapping.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, One, Signed,
    ToPrimitive, Zero,
};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Floating point scalar used by the numeric channel, codebook and decoder.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Real")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

/// Integer backing exact Gaussian-integer and golden-field arithmetic.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + ToPrimitive
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("every ExactInt holds i64")
    }
}

impl ExactInt for i64 {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}
