use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumCast};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real number type used by the embedding, comparison and retrieval math.
///
/// Implemented for `f32` and `f64`. The crate root exports `f64` aliases for
/// every generic type.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumCast
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossless-enough conversion from a count.
    fn from_count(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("count representable as float")
    }

    /// `n / d` for counts, the way frequencies and coverage ratios are formed.
    fn ratio(n: usize, d: usize) -> Self {
        Self::from_count(n) / Self::from_count(d)
    }

    fn clamp_unit(self) -> Self {
        self.max(-Self::one()).min(Self::one())
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
