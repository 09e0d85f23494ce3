//! Exact arithmetic in `Q(β)` for a real algebraic `β`.
//!
//! Elements are rational polynomials in `β` reduced modulo the defining
//! polynomial. Zero tests are exact; signs are decided by evaluating over a
//! refined isolator of `β`, which terminates for every nonzero element.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{qpoly, IntPoly};
use super::real::{is_zero_at, minimal_polynomial, AlgebraicReal};
use crate::error::{Error, Result};
use crate::scalar::{two_pow_neg, Interval};

/// The field `Q(β)` with a cached, progressively refined isolator of `β`.
#[derive(Debug)]
pub struct NumberField {
    modulus: Vec<BigRational>,
    irreducible: bool,
    root: RwLock<AlgebraicReal>,
}

impl NumberField {
    /// Builds `Q(β)`; the modulus is the minimal polynomial when it can be
    /// factored, otherwise the square-free defining polynomial.
    pub fn new(beta: &AlgebraicReal) -> Arc<NumberField> {
        let m = minimal_polynomial(beta);
        let irreducible = m.deg() <= super::real::FACTOR_DEGREE_CEILING;
        let root = AlgebraicReal::new(&m, beta.lo().clone(), beta.hi().clone())
            .expect("minimal polynomial keeps the isolated root");
        Arc::new(NumberField {
            modulus: qpoly::monic(&m.to_rational()),
            irreducible,
            root: RwLock::new(root.refine_to(64)),
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Whether elements have canonical coefficient vectors.
    pub fn is_canonical(&self) -> bool {
        self.irreducible
    }

    pub fn modulus(&self) -> IntPoly {
        IntPoly::from_rational(&self.modulus)
    }

    /// The generator `β` as an algebraic real.
    pub fn beta(&self) -> AlgebraicReal {
        self.root.read().unwrap().clone()
    }

    fn root_with_width(&self, bits: u32) -> AlgebraicReal {
        let target = two_pow_neg(bits);
        {
            let r = self.root.read().unwrap();
            if r.width() <= target {
                return r.clone();
            }
        }
        let mut w = self.root.write().unwrap();
        if w.width() > target {
            *w = w.refine_to(bits);
        }
        w.clone()
    }

    fn current_bits(&self) -> u32 {
        let r = self.root.read().unwrap();
        if r.as_rational().is_some() {
            return 0;
        }
        let w = r.width();
        let mut bits = 0u32;
        let mut x = BigRational::one();
        while x > w {
            x /= BigRational::from_integer(2.into());
            bits += 1;
        }
        bits
    }
}

/// Element of a [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.poly_string())
    }
}

impl FieldElement {
    fn make(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = if coeffs.len() >= field.modulus.len() {
            qpoly::rem(&coeffs, &field.modulus)
        } else {
            qpoly::trimmed(coeffs)
        };
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        FieldElement::make(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        FieldElement::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement::make(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        FieldElement::from_int(field, 1)
    }

    /// The generator `β`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        FieldElement::make(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// `p(β)`.
    pub fn from_poly(field: &Arc<NumberField>, p: &IntPoly) -> Self {
        FieldElement::make(field, p.to_rational())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coefficients in the power basis `1, β, β², …`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.is_empty() {
            return true;
        }
        if self.field.irreducible || self.coeffs.len() == 1 {
            return false;
        }
        is_zero_at(&IntPoly::from_rational(&self.coeffs), &self.field.beta())
    }

    pub fn pow(&self, n: usize) -> FieldElement {
        let mut result = FieldElement::one(&self.field);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let mut h = self.field.modulus.clone();
        loop {
            let (g, s) = qpoly::ext_gcd(&self.coeffs, &h);
            if g.len() == 1 {
                return Ok(FieldElement::make(&self.field, s));
            }
            // g divides self, which does not vanish at β; the cofactor does.
            h = qpoly::div_rem(&h, &g).0;
        }
    }

    /// Rational enclosure of the value with width at most `2^{-bits}`.
    pub fn enclosure(&self, bits: u32) -> Interval<BigRational> {
        if let Some(r) = self.as_rational() {
            return Interval::point(r);
        }
        let target = two_pow_neg(bits);
        let mut b = self.field.current_bits().max(bits / 2 + 8);
        loop {
            let root = self.field.root_with_width(b);
            let v = eval_rational_interval(&self.coeffs, &root.isolator());
            if v.width() <= target {
                return v;
            }
            b += 32;
        }
    }

    pub fn signum(&self) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut b = self.field.current_bits();
        loop {
            let root = self.field.root_with_width(b);
            let v = eval_rational_interval(&self.coeffs, &root.isolator());
            if let Some(s) = v.sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            b += 32;
        }
    }

    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        (self - other).signum()
    }

    pub fn to_f64(&self) -> f64 {
        let e = self.enclosure(64);
        ((e.lo() + e.hi()) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// A polynomial relation `P(x) = 0` from the linear dependence of powers.
    pub fn annihilating_polynomial(&self) -> IntPoly {
        let n = self.field.degree();
        // Rows kept in echelon form together with their expression in powers.
        let mut rows: Vec<(Vec<BigRational>, Vec<BigRational>, usize)> = Vec::new();
        let mut power = FieldElement::one(&self.field);
        for k in 0..=n {
            let mut v = dense(&power.coeffs, n);
            let mut combo = vec![BigRational::zero(); k + 1];
            combo[k] = BigRational::one();
            for (rv, rc, piv) in &rows {
                if !v[*piv].is_zero() {
                    let f = &v[*piv] / &rv[*piv];
                    for i in 0..n {
                        v[i] -= &f * &rv[i];
                    }
                    for (i, c) in rc.iter().enumerate() {
                        combo[i] -= &f * c;
                    }
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return IntPoly::from_rational(&combo),
                Some(piv) => rows.push((v, combo, piv)),
            }
            power = &power * self;
        }
        unreachable!("n + 1 powers in an n-dimensional space are dependent")
    }

    /// The value as an [`AlgebraicReal`].
    pub fn to_algebraic(&self) -> AlgebraicReal {
        if let Some(r) = self.as_rational() {
            return AlgebraicReal::from_rational(r);
        }
        let p = self.annihilating_polynomial().square_free();
        let mut bits = 32;
        loop {
            let e = self.enclosure(bits);
            if let Ok(x) = AlgebraicReal::new(&p, e.lo().clone(), e.hi().clone()) {
                return x;
            }
            bits += 32;
        }
    }

    pub fn poly_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})b"),
                _ => format!("({c})b^{k}"),
            });
        }
        parts.join(" + ")
    }
}

fn dense(c: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut v = c.to_vec();
    v.resize(n, BigRational::zero());
    v
}

fn eval_rational_interval(coeffs: &[BigRational], x: &Interval<BigRational>) -> Interval<BigRational> {
    let mut acc = Interval::point(BigRational::zero());
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + &Interval::point(c.clone());
    }
    acc
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::make(&self.field, qpoly::add(&self.coeffs, &rhs.coeffs))
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::make(&self.field, qpoly::sub(&self.coeffs, &rhs.coeffs))
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::make(&self.field, qpoly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::make(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::real::{reciprocal_root, smallest_root_in_unit};
    use crate::scalar::ratio;

    fn golden() -> Arc<NumberField> {
        let t: IntPoly = "1-t-t^2".parse().unwrap();
        NumberField::new(&reciprocal_root(&smallest_root_in_unit(&t).unwrap()).unwrap())
    }

    #[test]
    fn golden_field_identities() {
        let f = golden();
        let b = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        assert_eq!(&(&b * &b) - &b, one);
        let inv = b.inv().unwrap();
        assert_eq!(inv, &b - &one);
        assert_eq!(b.signum(), Ordering::Greater);
        assert_eq!((&one - &b).signum(), Ordering::Less);
        assert!((b.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn reducible_defining_polynomial_is_reduced() {
        // β root of (t^2 - t - 1)(t + 3) given as the defining polynomial.
        let p: IntPoly = "t^3+2t^2-4t-3".parse().unwrap();
        let beta = AlgebraicReal::new(&p, ratio(3, 2), ratio(2, 1)).unwrap();
        let f = NumberField::new(&beta);
        assert_eq!(f.degree(), 2);
        let x = &FieldElement::generator(&f) + &FieldElement::from_int(&f, 3);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, FieldElement::one(&f));
    }

    #[test]
    fn algebraic_conversion() {
        let f = golden();
        let b = FieldElement::generator(&f);
        let x = &(&b * &b) + &FieldElement::from_int(&f, 1);
        let a = x.to_algebraic();
        assert!((a.to_f64() - 3.618033988749895).abs() < 1e-12);
        assert_eq!(a.defining(), &"t^2-5t+5".parse::<IntPoly>().unwrap());
        let r = FieldElement::from_rational(&f, ratio(3, 7)).to_algebraic();
        assert_eq!(r.as_rational(), Some(&ratio(3, 7)));
    }
}
