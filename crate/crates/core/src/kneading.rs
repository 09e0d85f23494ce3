//! From symbol sequences to parameters: kneading determinants, `(β, α)`
//! recovery, orbit expansions, the projection `π` and block counting.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{
    reciprocal_root, smallest_root_in_unit, AlgebraicReal, FieldElement, IntPoly, NumberField,
};
use crate::error::{Error, Result};
use crate::scalar::{two_pow_neg, Interval, Scalar};
use crate::words::{EPWord, FinWord, KneadingPair};

/// Default ceiling for [`count_blocks`].
pub const BLOCK_CEILING: usize = 24;

/// Which one-sided map (`T+` or `T−`) drives an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// `K(t) = K+(t) − K−(t)` written as `numerator / (1 − t^L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneadingDeterminant {
    /// Numerator over `1 − t^L`; constant term `1`, linear term `−1`.
    pub numerator: IntPoly,
    /// Numerator with common factors of `1 − t^L` divided out.
    pub reduced: IntPoly,
    /// The exponent `L`, a multiple of both period lengths and at least 2.
    pub denominator_exponent: usize,
    pub plus_lengths: (usize, usize),
    pub minus_lengths: (usize, usize),
}

fn series_over(w: &EPWord, l: usize) -> Vec<BigInt> {
    // Σ w_i t^{i−1} · (1 − t^L), where the periodic tail telescopes.
    let a = w.pre_len();
    let b = w.period_len();
    let mut out = vec![BigInt::zero(); a + l];
    for (i, &s) in w.preperiod().iter().enumerate() {
        if s == 1 {
            out[i] += 1;
            out[i + l] -= 1;
        }
    }
    for rep in 0..l / b {
        for (j, &s) in w.period().iter().enumerate() {
            if s == 1 {
                out[a + rep * b + j] += 1;
            }
        }
    }
    out
}

/// Kneading determinant of a pair of eventually periodic words.
pub fn kneading_determinant(pair: &KneadingPair) -> KneadingDeterminant {
    let l = pair.period_lcm().max(2);
    let p = series_over(pair.kplus(), l);
    let m = series_over(pair.kminus(), l);
    let n = p.len().max(m.len());
    let coeffs: Vec<BigInt> = (0..n)
        .map(|i| p.get(i).cloned().unwrap_or_default() - m.get(i).cloned().unwrap_or_default())
        .collect();
    let numerator = IntPoly::new(coeffs);
    let mut den = vec![BigInt::zero(); l + 1];
    den[0] = BigInt::one();
    den[l] = -BigInt::one();
    let g = numerator.gcd(&IntPoly::new(den));
    let mut reduced = numerator.exact_div(&g).unwrap_or_else(|| numerator.clone());
    if reduced.constant().is_negative() {
        reduced = -&reduced;
    }
    KneadingDeterminant {
        numerator,
        reduced,
        denominator_exponent: l,
        plus_lengths: (pair.kplus().pre_len(), pair.kplus().period_len()),
        minus_lengths: (pair.kminus().pre_len(), pair.kminus().period_len()),
    }
}

/// Smallest root `t0` of the determinant numerator in `(0, 1)`.
pub fn smallest_determinant_root(pair: &KneadingPair) -> Result<AlgebraicReal> {
    smallest_root_in_unit(&kneading_determinant(pair).numerator)
}

/// `β = 1/t0`.
pub fn beta_from_pair(pair: &KneadingPair) -> Result<AlgebraicReal> {
    reciprocal_root(&smallest_determinant_root(pair)?)
}

/// `K_w(x)` evaluated exactly in a number field.
pub fn series_value(w: &EPWord, x: &FieldElement) -> Result<FieldElement> {
    let field = x.field();
    let mut acc = FieldElement::zero(field);
    let mut pw = FieldElement::one(field);
    for &s in w.preperiod() {
        if s == 1 {
            acc = &acc + &pw;
        }
        pw = &pw * x;
    }
    let mut tail = FieldElement::zero(field);
    let mut qw = FieldElement::one(field);
    for &s in w.period() {
        if s == 1 {
            tail = &tail + &qw;
        }
        qw = &qw * x;
    }
    let denom = &FieldElement::one(field) - &qw;
    Ok(&acc + &(&pw * &(&tail * &denom.inv()?)))
}

/// Exact `α = (β − 1)(K+(1/β) − 1)` in the given field.
pub fn alpha_in_field(pair: &KneadingPair, field: &Arc<NumberField>) -> Result<FieldElement> {
    let beta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let x = beta.inv()?;
    let kp = series_value(pair.kplus(), &x)?;
    Ok(&(&beta - &one) * &(&kp - &one))
}

/// The same formula through `K−`; equal to [`alpha_in_field`] for valid pairs.
pub fn alpha_in_field_minus(pair: &KneadingPair, field: &Arc<NumberField>) -> Result<FieldElement> {
    let beta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let x = beta.inv()?;
    let km = series_value(pair.kminus(), &x)?;
    Ok(&(&beta - &one) * &(&km - &one))
}

/// `α` as an algebraic real, given the determinant root `t0`.
pub fn alpha_from_pair(pair: &KneadingPair, t0: &AlgebraicReal) -> Result<AlgebraicReal> {
    let field = NumberField::new(&reciprocal_root(t0)?);
    let alpha = alpha_in_field(pair, &field)?;
    check_alpha_range(&alpha)?;
    Ok(alpha.to_algebraic())
}

fn check_alpha_range(alpha: &FieldElement) -> Result<()> {
    let field = alpha.field();
    let upper = &FieldElement::from_int(field, 2) - &FieldElement::generator(field);
    if alpha.signum() == Ordering::Less || alpha.cmp_value(&upper) == Ordering::Greater {
        return Err(Error::InconsistentPair(format!(
            "alpha = {:.6} lies outside [0, 2 - beta]",
            alpha.to_f64()
        )));
    }
    Ok(())
}

/// A point `(β, α)` of the closed parameter triangle, held exactly in `Q(β)`.
#[derive(Clone, Debug)]
pub struct ParameterPair {
    field: Arc<NumberField>,
    alpha: FieldElement,
}

impl ParameterPair {
    /// Requires `1 < β < 2` and `0 ≤ α ≤ 2 − β`.
    pub fn new(alpha: FieldElement) -> Result<Self> {
        let field = alpha.field().clone();
        let beta = FieldElement::generator(&field);
        if beta.cmp_value(&FieldElement::one(&field)) != Ordering::Greater
            || beta.cmp_value(&FieldElement::from_int(&field, 2)) != Ordering::Less
        {
            return Err(Error::Domain("beta must lie in (1, 2)".into()));
        }
        check_alpha_range(&alpha).map_err(|e| Error::Domain(e.to_string()))?;
        Ok(ParameterPair { field, alpha })
    }

    /// `(β, α)` from a pair: `β` from the determinant, `α` from `K+`.
    pub fn from_pair(pair: &KneadingPair) -> Result<Self> {
        let beta = beta_from_pair(pair)?;
        let field = NumberField::new(&beta);
        let alpha = alpha_in_field(pair, &field)?;
        check_alpha_range(&alpha)?;
        ParameterPair::new(alpha)
    }

    /// `α = num/den · (2 − β)` on the fiber of `field`.
    pub fn on_fiber(field: &Arc<NumberField>, num: i64, den: i64) -> Result<Self> {
        let t = BigRational::new(num.into(), den.into());
        let upper = &FieldElement::from_int(field, 2) - &FieldElement::generator(field);
        ParameterPair::new(&FieldElement::from_rational(field, t) * &upper)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn beta(&self) -> FieldElement {
        FieldElement::generator(&self.field)
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta_real(&self) -> AlgebraicReal {
        self.field.beta()
    }

    pub fn alpha_real(&self) -> AlgebraicReal {
        self.alpha.to_algebraic()
    }

    /// `c = (1 − α)/β`.
    pub fn critical(&self) -> FieldElement {
        let one = FieldElement::one(&self.field);
        &(&one - &self.alpha) * &self.beta().inv().expect("beta is nonzero")
    }

    /// `α = 0`.
    pub fn is_greedy(&self) -> bool {
        self.alpha.is_zero()
    }

    /// `α = 2 − β`.
    pub fn is_lazy(&self) -> bool {
        let upper = &FieldElement::from_int(&self.field, 2) - &self.beta();
        self.alpha == upper
    }

    /// Parameters of the mirrored map, `α ↦ 2 − β − α`.
    pub fn mirror(&self) -> ParameterPair {
        let upper = &FieldElement::from_int(&self.field, 2) - &self.beta();
        ParameterPair {
            field: self.field.clone(),
            alpha: &upper - &self.alpha,
        }
    }

    /// `{beta: {...}, alpha: {...}, critical: "..."}`.
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "beta": self.beta_real().to_json(digits),
            "alpha": self.alpha_real().to_json(digits),
            "critical": crate::algebra::real::format_decimal(
                &midpoint(&self.critical().enclosure(digits as u32 * 4 + 8)),
                digits
            ),
        })
    }
}

fn midpoint(i: &Interval<BigRational>) -> BigRational {
    (i.lo() + i.hi()) / BigRational::from_integer(2.into())
}

/// Outcome of an orbit expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandStatus {
    /// Every symbol is certified.
    Certified,
    /// The symbol at this 0-based index could not be decided within the budget.
    Undecided { index: usize },
}

/// Sign of `x` decided with isolator refinement of at most `budget` bits.
pub(crate) fn sign_within(x: &FieldElement, budget: u32) -> Option<Ordering> {
    if x.is_zero() {
        return Some(Ordering::Equal);
    }
    let mut bits = 32;
    loop {
        let e = x.enclosure(bits.min(budget));
        match e.sign() {
            Some(s) if s != Ordering::Equal => return Some(s),
            _ => {}
        }
        if bits >= budget {
            return None;
        }
        bits *= 2;
    }
}

/// First `depth` symbols of `τ±(c)`.
///
/// Each symbol is certified either by an enclosure of the orbit point that
/// lies strictly on one side of `c`, or by an exact test `x = c` in `Q(β)`;
/// on a hit, `T+` continues with symbol 1 and `T−` with symbol 0.
pub fn expand(params: &ParameterPair, sign: Sign, depth: usize, budget_bits: u32) -> (FinWord, ExpandStatus) {
    let c = params.critical();
    let beta = params.beta();
    let alpha = params.alpha().clone();
    let field = params.field();
    let mut x = c.clone();
    let mut out = Vec::with_capacity(depth);
    for index in 0..depth {
        let s = match sign_within(&(&x - &c), budget_bits) {
            None => return (FinWord::new(out), ExpandStatus::Undecided { index }),
            Some(Ordering::Less) => 0,
            Some(Ordering::Greater) => 1,
            Some(Ordering::Equal) => match sign {
                Sign::Plus => 1,
                Sign::Minus => 0,
            },
        };
        out.push(s);
        x = &(&(&beta * &x) + &alpha) - &FieldElement::from_int(field, s as i64);
    }
    (FinWord::new(out), ExpandStatus::Certified)
}

/// Interval-only expansion for arbitrary scalars.
///
/// The first symbol is fixed by the convention at `c`; afterwards a symbol is
/// emitted only when the orbit enclosure is strictly on one side of `c`.
pub fn expand_numeric<T: Scalar>(
    beta: &Interval<T>,
    alpha: &Interval<T>,
    sign: Sign,
    depth: usize,
) -> (FinWord, ExpandStatus) {
    let one = Interval::point(T::one());
    let c = match (&one - alpha).mul_recip(beta) {
        Some(c) => c,
        None => return (FinWord::default(), ExpandStatus::Undecided { index: 0 }),
    };
    let mut out = Vec::with_capacity(depth);
    if depth == 0 {
        return (FinWord::new(out), ExpandStatus::Certified);
    }
    let (first, mut x) = match sign {
        Sign::Plus => (1u8, Interval::point(T::zero())),
        Sign::Minus => (0u8, Interval::point(T::one())),
    };
    out.push(first);
    for index in 1..depth {
        let s = match x.compare(&c) {
            Some(Ordering::Less) => 0u8,
            Some(Ordering::Greater) => 1u8,
            _ => return (FinWord::new(out), ExpandStatus::Undecided { index }),
        };
        out.push(s);
        let shift = Interval::point(T::from_int(s as i64));
        x = &(&(beta * &x) + alpha) - &shift;
    }
    (FinWord::new(out), ExpandStatus::Certified)
}

impl<T: Scalar> Interval<T> {
    /// `self / d` for a zero-free `d`.
    pub fn mul_recip(&self, d: &Interval<T>) -> Option<Interval<T>> {
        d.recip().map(|r| self * &r)
    }
}

/// `π(ω) = α/(1 − β) + Σ ω_k β^{−k}` exactly in `Q(β)`.
pub fn project_exact(word: &EPWord, params: &ParameterPair) -> FieldElement {
    let field = params.field();
    let one = FieldElement::one(field);
    let beta = params.beta();
    let x = beta.inv().expect("beta is nonzero");
    // Σ ω_k x^k = x · K_ω(x).
    let s = &x * &series_value(word, &x).expect("1 - x^b is nonzero for x < 1");
    let base = params.alpha() * &(&one - &beta).inv().expect("beta is not 1");
    &base + &s
}

/// Enclosure of `π(ω)` of width at most `2^{-precision}`.
pub fn project(word: &EPWord, params: &ParameterPair, precision: u32) -> Interval<BigRational> {
    project_exact(word, params).enclosure(precision)
}

/// `π(ω)` over interval enclosures of `β` and `α` in any scalar type.
pub fn project_numeric<T: Scalar>(word: &EPWord, beta: &Interval<T>, alpha: &Interval<T>) -> Option<Interval<T>> {
    let one = Interval::point(T::one());
    let x = beta.recip()?;
    let mut acc = Interval::point(T::zero());
    let mut pw = x.clone();
    for &s in word.preperiod() {
        if s == 1 {
            acc = &acc + &pw;
        }
        pw = &pw * &x;
    }
    let mut tail = Interval::point(T::zero());
    let mut qw = one.clone();
    for &s in word.period() {
        qw = &qw * &x;
        if s == 1 {
            tail = &tail + &qw;
        }
    }
    // pw = x^{a+1}; the tail starts at x^{a+1}, so scale by x^a.
    let xa = (&pw).mul_recip(&x)?;
    let geom = (&tail).mul_recip(&(&one - &qw))?;
    let base = alpha.mul_recip(&(&one - beta))?;
    Some(&(&base + &acc) + &(&xa * &geom))
}

/// `log β` together with `β`, with decimals on demand.
#[derive(Clone, Debug)]
pub struct Entropy {
    pub beta: AlgebraicReal,
}

impl Entropy {
    /// Enclosure of `ln β` with width about `2^{-bits}`.
    pub fn enclosure(&self, bits: u32) -> Interval<BigRational> {
        let b = self.beta.refine_to(bits + 4);
        let lo = ln_bound(b.lo(), bits + 4, false);
        let hi = ln_bound(b.hi(), bits + 4, true);
        Interval::new(lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        let e = self.enclosure(60);
        e.to_f64_pair().0 * 0.5 + e.to_f64_pair().1 * 0.5
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let e = self.enclosure((digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8);
        crate::algebra::real::format_decimal(&midpoint(&e), digits)
    }
}

/// Lower (or upper) bound for `ln x`, `x ≥ 1`, via `2 atanh((x−1)/(x+1))`.
fn ln_bound(x: &BigRational, bits: u32, upper: bool) -> BigRational {
    let one = BigRational::one();
    if *x <= one {
        return BigRational::zero();
    }
    // Halve the argument by powers of two: ln x = k ln 2 + ln(x / 2^k).
    let two = BigRational::from_integer(2.into());
    let mut y = x.clone();
    let mut k = 0i64;
    while y > two {
        y /= &two;
        k += 1;
    }
    let ln2 = atanh_series(&BigRational::new(1.into(), 3.into()), bits + 8, upper);
    let z = (&y - &one) / (&y + &one);
    let main = atanh_series(&z, bits + 8, upper);
    (ln2 * BigRational::from_integer(k.into()) + main) * &two
}

/// Bound for `atanh z = Σ z^{2j+1}/(2j+1)`, `0 ≤ z ≤ 1/2`.
fn atanh_series(z: &BigRational, bits: u32, upper: bool) -> BigRational {
    let target = two_pow_neg(bits);
    let z2 = z * z;
    let mut term = z.clone();
    let mut sum = BigRational::zero();
    let mut j = 0i64;
    loop {
        sum += &term / BigRational::from_integer((2 * j + 1).into());
        term *= &z2;
        j += 1;
        // Remaining tail ≤ term / ((2j+1)(1 − z²)).
        let tail = &term / (BigRational::from_integer((2 * j + 1).into()) * (BigRational::one() - &z2));
        if tail < target {
            return if upper { sum + tail } else { sum };
        }
    }
}

pub fn entropy(pair: &KneadingPair) -> Result<Entropy> {
    Ok(Entropy {
        beta: beta_from_pair(pair)?,
    })
}

/// Whether every shift of `word` lies in `[σ(k+), σ(k−)]`.
pub fn in_shift(pair: &KneadingPair, word: &EPWord) -> bool {
    let k0 = pair.k0();
    let k1 = pair.k1();
    (0..word.orbit_len()).all(|n| {
        let s = word.shift(n);
        k0 <= s && s <= k1
    })
}

/// Number of words of length `n` all of whose suffixes satisfy
/// `k(0)|ℓ ⪯ u ⪯ k(1)|ℓ`, i.e. the length-`n` factors of `Ω(k+, k−)`.
pub fn count_blocks(pair: &KneadingPair, n: usize) -> Result<u64> {
    count_blocks_with_ceiling(pair, n, BLOCK_CEILING)
}

pub fn count_blocks_with_ceiling(pair: &KneadingPair, n: usize, ceiling: usize) -> Result<u64> {
    if n > ceiling {
        return Err(Error::DegreeCeiling {
            degree: n,
            ceiling,
        });
    }
    let lower = pair.k0().prefix(n);
    let upper = pair.k1().prefix(n);
    let mut tight_lo: Vec<usize> = Vec::new();
    let mut tight_hi: Vec<usize> = Vec::new();
    Ok(count_rec(&lower, &upper, n, &mut tight_lo, &mut tight_hi))
}

/// `tight_lo`/`tight_hi` hold the matched lengths of suffixes still equal to
/// a prefix of the corresponding bound.
fn count_rec(lower: &[u8], upper: &[u8], remaining: usize, tight_lo: &mut Vec<usize>, tight_hi: &mut Vec<usize>) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for s in 0..=1u8 {
        let mut lo = Vec::with_capacity(tight_lo.len() + 1);
        let mut hi = Vec::with_capacity(tight_hi.len() + 1);
        let mut ok = true;
        for &l in tight_lo.iter().chain(std::iter::once(&0)) {
            match s.cmp(&lower[l]) {
                Ordering::Less => {
                    ok = false;
                    break;
                }
                Ordering::Equal => lo.push(l + 1),
                Ordering::Greater => {}
            }
        }
        if !ok {
            continue;
        }
        for &l in tight_hi.iter().chain(std::iter::once(&0)) {
            match s.cmp(&upper[l]) {
                Ordering::Greater => {
                    ok = false;
                    break;
                }
                Ordering::Equal => hi.push(l + 1),
                Ordering::Less => {}
            }
        }
        if ok {
            total += count_rec(lower, upper, remaining - 1, &mut lo, &mut hi);
        }
    }
    total
}

/// Growth estimate `ln(N(n) / N(n/2)) / (n − n/2)` from block counts.
pub fn block_growth(pair: &KneadingPair, n: usize) -> Result<f64> {
    let h = n / 2;
    let a = count_blocks(pair, n)? as f64;
    let b = count_blocks(pair, h)? as f64;
    Ok((a / b).ln() / (n - h) as f64)
}

/// Least common multiple helper used by callers that combine period data.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
