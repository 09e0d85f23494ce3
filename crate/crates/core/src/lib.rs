//! Exact computations for intermediate β-transformations `x ↦ βx + α (mod 1)`.
//!
//! The crate validates and classifies kneading pairs, recovers `(β, α)` from
//! them, detects matching, computes matching intervals with their endpoints and
//! builds periodic (finite type) approximations with certified error bounds.
//!
//! Exact work happens over [`Rational`] and the number field `Q(β)`; numeric
//! enclosures are generic over [`scalar::Scalar`] and come in the
//! [`F64Interval`], [`F32Interval`] and [`RatInterval`] flavours.

pub mod algebra;
pub mod error;
pub mod kneading;
pub mod matching;
pub mod scalar;
pub mod structure;
pub mod words;

pub use algebra::{AlgebraicReal, FieldElement, IntPoly, NumberField};
pub use error::{Error, Result};
pub use kneading::{KneadingDeterminant, ParameterPair, Sign};
pub use matching::{MatchingInterval, MatchingReport};
pub use scalar::{Interval, Scalar};
pub use structure::{PairClass, ShiftClass};
pub use words::{EPWord, FinWord, KneadingPair};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Interval with exact rational endpoints.
pub type RatInterval = Interval<Rational>;
/// Outward-rounded double precision interval.
pub type F64Interval = Interval<f64>;
/// Outward-rounded single precision interval.
pub type F32Interval = Interval<f32>;
