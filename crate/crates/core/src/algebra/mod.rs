//! Integer polynomials, exact real root isolation and number field arithmetic.

pub mod field;
pub mod poly;
pub mod real;
pub mod sturm;

pub use field::{FieldElement, NumberField};
pub use poly::IntPoly;
pub use real::{
    is_zero_at, minimal_polynomial, reciprocal_root, roots_in, smallest_root_in,
    smallest_root_in_unit, AlgebraicReal,
};
pub use sturm::Sturm;

/// Enclosure of `p` over a rational interval.
pub fn poly_eval_interval(
    p: &IntPoly,
    x: &crate::scalar::Interval<num_rational::BigRational>,
) -> crate::scalar::Interval<num_rational::BigRational> {
    p.eval_interval(x)
}
