//! Scalar abstraction and closed intervals over it.
//!
//! Every numeric routine that does not need exact field arithmetic is written
//! against [`Scalar`], so the same code runs with `f32`/`f64` (outward-rounded,
//! still enclosing) or with exact [`BigRational`] endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Ordered field element usable as an interval endpoint.
///
/// Inexact types widen every arithmetic result by one unit in the last place
/// in the requested direction, which keeps interval enclosures valid under
/// round-to-nearest.
pub trait Scalar: Clone + PartialOrd + num_traits::Num + Signed + fmt::Debug {
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_rational_down(r: &BigRational) -> Self;
    fn from_rational_up(r: &BigRational) -> Self;

    /// Moves a computed value one step toward negative infinity (no-op if exact).
    fn round_down(self) -> Self;
    /// Moves a computed value one step toward positive infinity (no-op if exact).
    fn round_up(self) -> Self;

    fn as_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        let r = BigRational::from_integer(BigInt::from(n));
        Self::from_rational_down(&r)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational_down(r: &BigRational) -> Self {
                let v = ToPrimitive::to_f64(r).unwrap_or(if r.is_negative() { f64::MIN } else { f64::MAX }) as $t;
                v.next_down().next_down()
            }

            fn from_rational_up(r: &BigRational) -> Self {
                let v = ToPrimitive::to_f64(r).unwrap_or(if r.is_negative() { f64::MIN } else { f64::MAX }) as $t;
                v.next_up().next_up()
            }

            fn round_down(self) -> Self {
                self.next_down()
            }

            fn round_up(self) -> Self {
                self.next_up()
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational_down(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_rational_up(r: &BigRational) -> Self {
        r.clone()
    }

    fn round_down(self) -> Self {
        self
    }

    fn round_up(self) -> Self {
        self
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    /// Builds `[lo, hi]`; the endpoints are swapped if given out of order.
    pub fn new(lo: T, hi: T) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn point(x: T) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// Smallest interval of this scalar type enclosing the rational `r`.
    pub fn from_rational(r: &BigRational) -> Self {
        Interval {
            lo: T::from_rational_down(r),
            hi: T::from_rational_up(r),
        }
    }

    pub fn from_rationals(lo: &BigRational, hi: &BigRational) -> Self {
        Interval::new(T::from_rational_down(lo), T::from_rational_up(hi))
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn width(&self) -> T {
        (self.hi.clone() - self.lo.clone()).round_up()
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Sign of every element, if it is the same throughout the interval.
    pub fn sign(&self) -> Option<Ordering> {
        let z = T::zero();
        if self.lo > z {
            Some(Ordering::Greater)
        } else if self.hi < z {
            Some(Ordering::Less)
        } else if self.lo == z && self.hi == z {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certain ordering of `self` against `other`, if the intervals are separated.
    pub fn compare(&self, other: &Interval<T>) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Interval<T>) -> Interval<T> {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn abs(&self) -> Interval<T> {
        let z = T::zero();
        if self.lo >= z {
            self.clone()
        } else if self.hi <= z {
            -self
        } else {
            let m = if -self.lo.clone() > self.hi { -self.lo.clone() } else { self.hi.clone() };
            Interval { lo: z, hi: m }
        }
    }

    pub fn recip(&self) -> Option<Interval<T>> {
        if self.contains_zero() {
            return None;
        }
        let one = T::one();
        Some(Interval::new(
            (one.clone() / self.hi.clone()).round_down(),
            (one / self.lo.clone()).round_up(),
        ))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.as_f64(), self.hi.as_f64())
    }
}

impl<'a, T: Scalar> Add for &'a Interval<T> {
    type Output = Interval<T>;
    fn add(self, rhs: &'a Interval<T>) -> Interval<T> {
        Interval {
            lo: (self.lo.clone() + rhs.lo.clone()).round_down(),
            hi: (self.hi.clone() + rhs.hi.clone()).round_up(),
        }
    }
}

impl<'a, T: Scalar> Sub for &'a Interval<T> {
    type Output = Interval<T>;
    fn sub(self, rhs: &'a Interval<T>) -> Interval<T> {
        Interval {
            lo: (self.lo.clone() - rhs.hi.clone()).round_down(),
            hi: (self.hi.clone() - rhs.lo.clone()).round_up(),
        }
    }
}

impl<'a, T: Scalar> Mul for &'a Interval<T> {
    type Output = Interval<T>;
    fn mul(self, rhs: &'a Interval<T>) -> Interval<T> {
        let products = [
            self.lo.clone() * rhs.lo.clone(),
            self.lo.clone() * rhs.hi.clone(),
            self.hi.clone() * rhs.lo.clone(),
            self.hi.clone() * rhs.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval {
            lo: lo.round_down(),
            hi: hi.round_up(),
        }
    }
}

impl<'a, T: Scalar> Neg for &'a Interval<T> {
    type Output = Interval<T>;
    fn neg(self) -> Interval<T> {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl<T: Scalar> Add for Interval<T> {
    type Output = Interval<T>;
    fn add(self, rhs: Interval<T>) -> Interval<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Interval<T> {
    type Output = Interval<T>;
    fn sub(self, rhs: Interval<T>) -> Interval<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Interval<T> {
    type Output = Interval<T>;
    fn mul(self, rhs: Interval<T>) -> Interval<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Interval<T> {
    type Output = Interval<T>;
    fn neg(self) -> Interval<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `2^-bits` as an exact rational.
pub fn two_pow_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Exact rational from a small fraction.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
