//! Real algebraic numbers as a defining polynomial plus an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::poly::IntPoly;
use super::sturm::Sturm;
use crate::error::{Error, Result};
use crate::scalar::{two_pow_neg, Interval, Scalar};

/// Degrees above this are not handed to the integer factorizer.
pub const FACTOR_DEGREE_CEILING: usize = 96;

/// Bits of isolator refinement used for decimal output by default.
pub const DEFAULT_DECIMAL_BITS: u32 = 50;

/// A real root of `defining` singled out by the rational isolator `[lo, hi]`.
///
/// `defining` is primitive and square-free. Either `lo == hi` (a rational
/// root) or `defining` takes nonzero values of opposite signs at `lo` and
/// `hi`, with exactly one root strictly between them.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    pub fn from_rational(r: BigRational) -> Self {
        let defining = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive();
        AlgebraicReal {
            defining,
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        AlgebraicReal::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds a root from a polynomial and an interval `[lo, hi]` holding
    /// exactly one of its roots; the isolator is normalized to the invariant.
    pub fn new(p: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        let sqf = p.square_free();
        if sqf.deg() == 0 {
            return Err(Error::Domain("constant polynomial has no roots".into()));
        }
        let sturm = Sturm::new(&sqf);
        if sturm.count_closed(&lo, &hi) != 1 {
            return Err(Error::Domain(format!(
                "interval [{lo}, {hi}] does not isolate exactly one root of {p}"
            )));
        }
        Ok(normalize(sqf, lo, hi))
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn isolator(&self) -> Interval<BigRational> {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step; the isolator width at least halves.
    pub fn refine(&self) -> AlgebraicReal {
        if self.lo == self.hi {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let s_mid = self.defining.sign_at(&mid);
        if s_mid == 0 {
            return AlgebraicReal {
                defining: self.defining.clone(),
                lo: mid.clone(),
                hi: mid,
            };
        }
        let s_lo = self.defining.sign_at(&self.lo);
        let (lo, hi) = if s_lo == s_mid {
            (mid, self.hi.clone())
        } else {
            (self.lo.clone(), mid)
        };
        AlgebraicReal {
            defining: self.defining.clone(),
            lo,
            hi,
        }
    }

    /// Refines until the isolator width is at most `2^{-bits}`.
    pub fn refine_to(&self, bits: u32) -> AlgebraicReal {
        let target = two_pow_neg(bits);
        let mut x = self.clone();
        while x.width() > target {
            x = x.refine();
        }
        x
    }

    /// Enclosure in any scalar type, after refining to `bits`.
    pub fn enclosure<T: Scalar>(&self, bits: u32) -> Interval<T> {
        let x = self.refine_to(bits);
        Interval::from_rationals(&x.lo, &x.hi)
    }

    pub fn to_f64(&self) -> f64 {
        let x = self.refine_to(60);
        ((&x.lo + &x.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Whether `p` vanishes at this number, decided exactly.
    pub fn is_root_of(&self, p: &IntPoly) -> bool {
        is_zero_at(p, self)
    }

    /// `1/x` for `x > 0`.
    pub fn reciprocal(&self) -> Result<AlgebraicReal> {
        reciprocal_root(self)
    }

    /// `−x`.
    pub fn neg(&self) -> AlgebraicReal {
        AlgebraicReal {
            defining: self.defining.reflect().primitive(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Sign of `p(x)`, decided exactly.
    pub fn sign_of_poly(&self, p: &IntPoly) -> Ordering {
        if is_zero_at(p, self) {
            return Ordering::Equal;
        }
        let mut x = self.clone();
        loop {
            let v = p.eval_interval(&x.isolator());
            if let Some(s) = v.sign() {
                return s;
            }
            for _ in 0..8 {
                x = x.refine();
            }
        }
    }

    /// The irreducible primitive factor of `defining` vanishing here.
    pub fn minimal_polynomial(&self) -> IntPoly {
        minimal_polynomial(self)
    }

    /// Same number with the irreducible factor as defining polynomial.
    pub fn with_minimal_polynomial(&self) -> AlgebraicReal {
        AlgebraicReal {
            defining: self.minimal_polynomial(),
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    /// Decimal string with `digits` places, rounded from a refined enclosure.
    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        let x = self.refine_to(bits);
        let mid = (&x.lo + &x.hi) / BigRational::from_integer(2.into());
        format_decimal(&mid, digits)
    }

    /// `{poly, isolator: [[num, den], [num, den]], decimal}`.
    pub fn to_json(&self, digits: usize) -> Value {
        let r = |q: &BigRational| json!([q.numer().to_string(), q.denom().to_string()]);
        json!({
            "poly": self.minimal_polynomial().to_string(),
            "isolator": [r(&self.lo), r(&self.hi)],
            "decimal": self.to_decimal(digits),
        })
    }
}

fn normalize(sqf: IntPoly, mut lo: BigRational, mut hi: BigRational) -> AlgebraicReal {
    if sqf.sign_at(&lo) == 0 {
        hi = lo.clone();
    } else if sqf.sign_at(&hi) == 0 {
        lo = hi.clone();
    }
    AlgebraicReal {
        defining: sqf,
        lo,
        hi,
    }
}

/// Renders `q` rounded half away from zero to `digits` decimal places.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let a = rounded.abs();
    let int = &a / &scale;
    let frac = &a % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl AlgebraicReal {
    /// Exact comparison.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(b);
        }
        if let Some(a) = self.as_rational() {
            if other.defining.sign_at(a) == 0 && other.lo <= *a && *a <= other.hi {
                return Ordering::Equal;
            }
        }
        if let Some(b) = other.as_rational() {
            if self.defining.sign_at(b) == 0 && self.lo <= *b && *b <= self.hi {
                return Ordering::Equal;
            }
        }
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        if lo <= hi {
            let g = self.defining.gcd(&other.defining);
            if g.deg() > 0 && Sturm::new(&g).count_closed(lo, hi) > 0 {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if a.lo > b.hi {
                return Ordering::Greater;
            }
            a = a.refine();
            b = b.refine();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(10))
    }
}

/// Smallest root of `p` in the open unit interval.
pub fn smallest_root_in_unit(p: &IntPoly) -> Result<AlgebraicReal> {
    smallest_root_in(p, &BigRational::zero(), &BigRational::one())
}

/// Smallest root of `p` in the open interval `(a, b)`.
pub fn smallest_root_in(p: &IntPoly, a: &BigRational, b: &BigRational) -> Result<AlgebraicReal> {
    let sqf = p.square_free();
    if sqf.deg() == 0 {
        return Err(Error::NoRootInUnit);
    }
    let sturm = Sturm::new(&sqf);
    if sturm.count_open(a, b) == 0 {
        return Err(Error::NoRootInUnit);
    }
    let two = BigRational::from_integer(2.into());
    // Invariant: at least one root in (lo, hi) and none in (a, lo].
    let (mut lo, mut hi) = (a.clone(), b.clone());
    loop {
        let n = sturm.count_open(&lo, &hi);
        if n == 1 {
            return Ok(normalize_open(sqf, lo, hi));
        }
        let mid = (&lo + &hi) / &two;
        if sqf.sign_at(&mid) == 0 && sturm.count_open(&lo, &mid) == 0 {
            return Ok(AlgebraicReal {
                defining: sqf,
                lo: mid.clone(),
                hi: mid,
            });
        }
        if sturm.count_open(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// All distinct roots of `p` in `(a, b)`, increasing.
pub fn roots_in(p: &IntPoly, a: &BigRational, b: &BigRational) -> Vec<AlgebraicReal> {
    let mut out = Vec::new();
    let mut lo = a.clone();
    while let Ok(r) = smallest_root_in(p, &lo, b) {
        lo = r.hi.clone();
        out.push(r);
    }
    out
}

/// Turns an open interval with exactly one root into a valid isolator.
fn normalize_open(sqf: IntPoly, lo: BigRational, hi: BigRational) -> AlgebraicReal {
    // Endpoints of the open interval may themselves be roots; shrink past them.
    let two = BigRational::from_integer(2.into());
    let (mut l, mut h) = (lo, hi);
    let sturm = Sturm::new(&sqf);
    if sqf.sign_at(&l) == 0 || sqf.sign_at(&h) == 0 {
        loop {
            let mid = (&l + &h) / &two;
            if sqf.sign_at(&mid) == 0 {
                return AlgebraicReal {
                    defining: sqf,
                    lo: mid.clone(),
                    hi: mid,
                };
            }
            if sturm.count_open(&l, &mid) == 1 {
                h = mid;
            } else {
                l = mid;
            }
            if sqf.sign_at(&l) != 0 && sqf.sign_at(&h) != 0 {
                break;
            }
        }
    }
    AlgebraicReal {
        defining: sqf,
        lo: l,
        hi: h,
    }
}

/// `1/t0` for a positive algebraic `t0`.
pub fn reciprocal_root(t0: &AlgebraicReal) -> Result<AlgebraicReal> {
    let mut x = t0.clone();
    if x.lo == x.hi {
        if x.lo.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        return Ok(AlgebraicReal::from_rational(x.lo.recip()));
    }
    while !x.lo.is_positive() {
        if x.hi <= BigRational::zero() {
            return Err(Error::Domain("reciprocal root requires t0 > 0".into()));
        }
        x = x.refine();
        if x.lo == x.hi {
            return reciprocal_root(&x);
        }
    }
    Ok(AlgebraicReal {
        defining: x.defining.reverse().primitive(),
        lo: x.hi.recip(),
        hi: x.lo.recip(),
    })
}

/// Whether `p(x) = 0`, via a root of `gcd(p, defining)` inside the isolator.
pub fn is_zero_at(p: &IntPoly, x: &AlgebraicReal) -> bool {
    if p.is_zero() {
        return true;
    }
    if let Some(r) = x.as_rational() {
        return p.sign_at(r) == 0;
    }
    let g = p.gcd(&x.defining);
    if g.deg() == 0 {
        return false;
    }
    Sturm::new(&g).count_closed(&x.lo, &x.hi) > 0
}

/// Primitive irreducible factor of `x.defining` that vanishes at `x`.
pub fn minimal_polynomial(x: &AlgebraicReal) -> IntPoly {
    if let Some(r) = x.as_rational() {
        return IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive();
    }
    let d = strip_cyclotomic(&x.defining);
    if d.deg() > FACTOR_DEGREE_CEILING {
        return d;
    }
    for (f, _) in d.factor() {
        if f.deg() > 0 && Sturm::new(&f).count_closed(&x.lo, &x.hi) > 0 {
            return f;
        }
    }
    d
}

/// Removes factors shared with `t^n − 1`; they only have roots of modulus 1.
fn strip_cyclotomic(p: &IntPoly) -> IntPoly {
    let mut q = p.clone();
    for n in 1..=2 * p.deg().max(1) {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        let g = q.gcd(&IntPoly::new(c));
        if g.deg() > 0 && g.deg() < q.deg() {
            q = q.exact_div(&g).expect("gcd divides").primitive();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn approx(x: &AlgebraicReal, v: f64, tol: f64) -> bool {
        (x.to_f64() - v).abs() < tol
    }

    #[test]
    fn smallest_roots_in_unit() {
        let g = smallest_root_in_unit(&p("1-t-t^2")).unwrap();
        assert!(approx(&g, 0.6180339887, 1e-9));
        let t = smallest_root_in_unit(&p("2t^4-2t^2-t+1")).unwrap();
        assert!(approx(&t, 0.5651977173, 1e-9));
        let t = smallest_root_in_unit(&p("1-t^2-t^3")).unwrap();
        assert!(approx(&t, 0.7548776662, 1e-9));
        assert_eq!(smallest_root_in_unit(&p("t^2+1")).unwrap_err(), Error::NoRootInUnit);
        assert_eq!(smallest_root_in_unit(&p("t-1")).unwrap_err(), Error::NoRootInUnit);
    }

    #[test]
    fn reciprocal_examples() {
        let g = smallest_root_in_unit(&p("1-t-t^2")).unwrap();
        let b = reciprocal_root(&g).unwrap();
        assert_eq!(b.defining(), &p("t^2-t-1"));
        assert!(approx(&b, 1.6180339887, 1e-9));
        let t = smallest_root_in_unit(&p("2t^3+2t^2-1")).unwrap();
        let b = reciprocal_root(&t).unwrap();
        assert_eq!(b.defining(), &p("t^3-2t-2"));
        assert!(approx(&b, 1.7692923542, 1e-9));
        let half = AlgebraicReal::from_rational(ratio(1, 2));
        let two = reciprocal_root(&half).unwrap();
        assert_eq!(two.as_rational(), Some(&ratio(2, 1)));
        assert_eq!(two.defining(), &p("t-2"));
    }

    #[test]
    fn zero_tests() {
        let b = reciprocal_root(&smallest_root_in_unit(&p("1-t-t^2")).unwrap()).unwrap();
        assert!(is_zero_at(&p("t^2-t-1"), &b));
        assert!(!is_zero_at(&p("t-1"), &b));
        assert!(is_zero_at(&(&p("t^2-t-1") * &p("t-3")), &b));
        // The conjugate root is not ours.
        let conj = smallest_root_in(&p("t^2-t-1"), &ratio(-1, 1), &ratio(0, 1)).unwrap();
        assert!(is_zero_at(&p("t^2-t-1"), &conj));
        assert!(!is_zero_at(&p("t^2-t-1"), &AlgebraicReal::from_rational(ratio(1, 1))));
    }

    #[test]
    fn minimal_polynomials() {
        let t = smallest_root_in_unit(&p("2t^4-2t^2-t+1")).unwrap();
        assert_eq!(t.minimal_polynomial(), p("2t^3+2t^2-1"));
        let b = reciprocal_root(&smallest_root_in_unit(&p("1-t-t^2")).unwrap()).unwrap();
        assert_eq!(b.minimal_polynomial(), p("t^2-t-1"));
        let sq = &p("t^2-t-1") * &p("t^2-t-1");
        let r = AlgebraicReal::new(&sq, ratio(3, 2), ratio(2, 1)).unwrap();
        assert_eq!(r.minimal_polynomial(), p("t^2-t-1"));
    }

    #[test]
    fn comparison_and_decimals() {
        let b = reciprocal_root(&smallest_root_in_unit(&p("1-t-t^2")).unwrap()).unwrap();
        let b2 = AlgebraicReal::new(&(&p("t^2-t-1") * &p("t+5")), ratio(1, 1), ratio(2, 1)).unwrap();
        assert_eq!(b.cmp_exact(&b2), Ordering::Equal);
        let s = AlgebraicReal::new(&p("t^2-2"), ratio(1, 1), ratio(2, 1)).unwrap();
        assert_eq!(s.cmp_exact(&b), Ordering::Less);
        assert_eq!(b.to_decimal(5), "1.61803");
        assert_eq!(format_decimal(&ratio(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&ratio(2, 3), 0), "1");
    }

    #[test]
    fn roots_in_lists_all() {
        let r = roots_in(&p("t^3-t"), &ratio(-2, 1), &ratio(2, 1));
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].cmp_exact(&AlgebraicReal::from_integer(0)), Ordering::Equal);
        assert_eq!(r[0].cmp_exact(&AlgebraicReal::from_integer(-1)), Ordering::Equal);
        let s = roots_in(&p("t^3-t^2-t-1"), &ratio(1, 1), &ratio(2, 1));
        assert_eq!(s.len(), 1);
    }
}
