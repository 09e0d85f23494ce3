//! Dense univariate polynomials with integer and rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Interval, Scalar};

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// `c·t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Homogenized Horner keeps the work in integers.
        let (n, d) = (x.numer(), x.denom());
        let deg = self.deg();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        if self.coeffs.is_empty() {
            return BigRational::zero();
        }
        BigRational::new(acc, num_traits::pow(d.clone(), deg))
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of(&acc)
    }

    /// Enclosure of `{p(t) : t ∈ x}` by interval Horner evaluation.
    pub fn eval_interval<T: Scalar>(&self, x: &Interval<T>) -> Interval<T> {
        let mut acc = Interval::point(T::zero());
        for c in self.coeffs.iter().rev() {
            let c = Interval::from_rational(&BigRational::from_integer(c.clone()));
            acc = &(&acc * x) + &c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `t^d p(1/t)` with `d` the degree.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `p(−t)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Pseudo-remainder `lc(b)^{deg a − deg b + 1} a mod b` and its exponent.
    pub fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, usize) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return (self.clone(), 0);
        }
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut steps = 0;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * bc;
            }
            trim(&mut r);
            steps += 1;
        }
        let total = self.deg() - db + 1;
        if steps < total {
            let f = num_traits::pow(lb, total - steps);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        (IntPoly::new(r), total)
    }

    /// Exact quotient `self / b` if it exists in `Z[t]`.
    pub fn exact_div(&self, b: &IntPoly) -> Option<IntPoly> {
        let (q, r) = qpoly::div_rem(&self.to_rational(), &b.to_rational());
        if !r.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Primitive square-free part.
    pub fn square_free(&self) -> IntPoly {
        if self.deg() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .exact_div(&g)
            .expect("gcd divides the polynomial")
            .primitive()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Primitive integer polynomial proportional to a rational one.
    pub fn from_rational(coeffs: &[BigRational]) -> IntPoly {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Irreducible factors with multiplicity, each primitive with positive leading coefficient.
    pub fn factor(&self) -> Vec<(IntPoly, usize)> {
        use algebraics::polynomial::Polynomial;
        if self.deg() == 0 {
            return Vec::new();
        }
        let mut out: Vec<(IntPoly, usize)> = Vec::new();
        let mut rest = self.primitive();
        // Powers of t are split off first; the factorizer expects a nonzero constant.
        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            out.push((IntPoly::from_i64(&[0, 1]), zeros));
            rest = IntPoly::new(rest.coeffs[zeros..].to_vec());
        }
        if rest.deg() > 0 {
            let p: Polynomial<BigInt> = rest.coeffs.iter().cloned().collect();
            for f in p.factor().polynomial_factors {
                let q = IntPoly::new(f.polynomial.iter().collect()).primitive();
                out.push((q, f.power));
            }
        }
        out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then(a.0.coeffs.cmp(&b.0.coeffs)));
        out
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    /// Descending powers of `t`, e.g. `2t^3+2t^2-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let a = c.abs();
            if k == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `ct`, `c*t^k`, `t^k` in the variable `t`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = s
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        if chars.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        let digits = |i: &mut usize| -> Option<String> {
            let start = *i;
            while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                *i += 1;
            }
            (*i > start).then(|| chars[start..*i].iter().map(|c| c.1).collect())
        };
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i].1 == '+' || chars[i].1 == '-' {
                if chars[i].1 == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err(chars[i].0, "expected '+' or '-'"));
            }
            let term_start = chars.get(i).map_or(s.chars().count(), |c| c.0);
            let coef = digits(&mut i).map(|d| d.parse::<BigInt>().unwrap());
            if coef.is_some() && i < chars.len() && chars[i].1 == '*' {
                i += 1;
                if i >= chars.len() || chars[i].1 != 't' {
                    return Err(err(chars.get(i).map_or(s.chars().count(), |c| c.0), "expected 't' after '*'"));
                }
            }
            let power = if i < chars.len() && chars[i].1 == 't' {
                i += 1;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let pos = chars.get(i).map_or(s.chars().count(), |c| c.0);
                    let d = digits(&mut i).ok_or_else(|| err(pos, "expected exponent"))?;
                    d.parse::<usize>().map_err(|_| err(pos, "exponent too large"))?
                } else {
                    1
                }
            } else if coef.is_some() {
                0
            } else {
                return Err(err(term_start, "expected a term"));
            };
            if power > 4096 {
                return Err(err(term_start, "exponent too large"));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += sign * coef.unwrap_or_else(BigInt::one);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Rational polynomial helpers over `Vec<BigRational>` (ascending, trimmed).
pub(crate) mod qpoly {
    use super::*;

    pub fn trimmed(mut v: Vec<BigRational>) -> Vec<BigRational> {
        trim(&mut v);
        v
    }

    pub fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        trimmed(
            (0..n)
                .map(|k| {
                    let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
                    let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
                    x + y
                })
                .collect(),
        )
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        trimmed(
            (0..n)
                .map(|k| {
                    let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
                    let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
                    x - y
                })
                .collect(),
        )
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trimmed(out)
    }

    pub fn scale(a: &[BigRational], k: &BigRational) -> Vec<BigRational> {
        trimmed(a.iter().map(|c| c * k).collect())
    }

    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let f = &r[dr] / &lb;
            for (i, bc) in b.iter().enumerate() {
                r[dr - db + i] -= &f * bc;
            }
            q[dr - db] = f;
            r.pop();
            trim(&mut r);
        }
        (trimmed(q), r)
    }

    pub fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        div_rem(a, b).1
    }

    pub fn monic(a: &[BigRational]) -> Vec<BigRational> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = l.recip();
                a.iter().map(|c| c * &inv).collect()
            }
        }
    }

    /// `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
    pub fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (m.to_vec(), trimmed(a.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let l = r0.last().cloned().unwrap_or_else(BigRational::one);
        let inv = l.recip();
        (scale(&r0, &inv), scale(&s0, &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["t^3-2t-2", "2t^3+2t^2-1", "t^2-t-1", "-t+1", "1", "0", "t^10-t^9-1"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("1 - t - 2*t^2 + 2 t^4"), IntPoly::from_i64(&[1, -1, -2, 0, 2]));
        assert!(matches!("t^".parse::<IntPoly>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("t^2 x".parse::<IntPoly>(), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn interval_evaluation_examples() {
        let x = Interval::new(ratio(1, 1), ratio(2, 1));
        let v = p("t^2-t-1").eval_interval(&x);
        assert!(v.contains_zero());
        let v = IntPoly::one().eval_interval(&Interval::new(ratio(-3, 1), ratio(5, 1)));
        assert_eq!(v, Interval::point(ratio(1, 1)));
        let x = Interval::new(ratio(1, 2), ratio(3, 4));
        assert_eq!(p("t").eval_interval(&x), x);
        let xf: Interval<f64> = Interval::from_rationals(&ratio(1, 1), &ratio(2, 1));
        assert!(p("t^2-t-1").eval_interval(&xf).contains_zero());
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p("t^2-t-1");
        let b = p("t-3");
        let prod = &a * &b;
        assert_eq!(prod.gcd(&a), a);
        assert_eq!((&a * &a).square_free(), a);
        assert_eq!(a.gcd(&b), IntPoly::one());
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&p("2t-1")), None);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p("3t^4-2t^3+t-7");
        let b = p("2t^2+t-1");
        let (r, e) = a.pseudo_rem(&b);
        let (_, rq) = qpoly::div_rem(&a.to_rational(), &b.to_rational());
        let f = BigRational::from_integer(num_traits::pow(b.leading(), e));
        assert_eq!(r.to_rational(), qpoly::scale(&rq, &f));
    }

    #[test]
    fn factorization_of_determinant_numerator() {
        let f = p("2t^4-2t^2-t+1").factor();
        assert_eq!(f, vec![(p("t-1"), 1), (p("2t^3+2t^2-1"), 1)]);
        let f = p("t^5+t-1").factor();
        assert_eq!(f, vec![(p("t^2-t+1"), 1), (p("t^3+t^2-1"), 1)]);
    }

    #[test]
    fn extended_gcd_inverts_modulo() {
        let m = p("t^3-2t-2").to_rational();
        let a = p("t^2+1").to_rational();
        let (g, s) = qpoly::ext_gcd(&a, &m);
        assert_eq!(g, vec![BigRational::one()]);
        assert_eq!(qpoly::rem(&qpoly::mul(&s, &a), &m), vec![BigRational::one()]);
    }

    #[test]
    fn rational_evaluation() {
        assert_eq!(p("2t-1").eval(&ratio(1, 2)), BigRational::zero());
        assert_eq!(p("t^2-t-1").eval(&ratio(3, 2)), ratio(-1, 4));
        assert_eq!(p("t^2-t-1").sign_at(&ratio(3, 2)), -1);
    }
}
