//! Sturm sequences for exact real root counting.

use num_rational::BigRational;
use num_traits::Signed;

use super::poly::IntPoly;

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    /// Builds the sequence; `p` should be square-free for counts of distinct roots.
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.deg() == 0 {
            return Sturm { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let (r, e) = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem multiplies by lc(b)^e; undo its sign so the sequence keeps true signs.
            let flip = b.leading().is_negative() && e % 2 == 1;
            let r = if flip { r } else { -&r };
            let c = r.content();
            let r = IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect());
            seq.push(r);
        }
        Sturm { seq }
    }

    /// Sign changes of the sequence at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct roots in `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.seq[0].sign_at(a) == 0);
        if a == b {
            return at_a;
        }
        self.count(a, b) + at_a
    }

    /// Number of distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        let at_b = usize::from(self.seq[0].sign_at(b) == 0);
        self.count(a, b) - at_b
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn counts_roots_of_known_polynomials() {
        let p: IntPoly = "t^3-t".parse().unwrap();
        let s = Sturm::new(&p);
        assert_eq!(s.count(&ratio(-2, 1), &ratio(2, 1)), 3);
        assert_eq!(s.count(&ratio(-1, 1), &ratio(1, 1)), 2);
        assert_eq!(s.count_closed(&ratio(-1, 1), &ratio(1, 1)), 3);
        assert_eq!(s.count_open(&ratio(-1, 1), &ratio(1, 1)), 1);
        let q: IntPoly = "-2t^3+t+7".parse().unwrap();
        assert_eq!(Sturm::new(&q).count(&ratio(-10, 1), &ratio(10, 1)), 1);
        let r: IntPoly = "t^2+1".parse().unwrap();
        assert_eq!(Sturm::new(&r).count(&ratio(-10, 1), &ratio(10, 1)), 0);
    }
}
