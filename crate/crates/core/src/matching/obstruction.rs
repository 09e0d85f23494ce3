use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{AlgebraicReal, IntPoly};

/// Whether the minimal polynomial of `β` rules out matching on its fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `1/β` is not an algebraic integer, so no `α` has matching.
    Obstructed,
    NotObstructed,
}

/// Obstructed iff the minimal polynomial is not monic with constant term `±1`.
pub fn matching_obstruction(beta: &AlgebraicReal) -> Obstruction {
    let p = beta.minimal_polynomial();
    if p.leading().abs().is_one() && p.constant().abs().is_one() {
        Obstruction::NotObstructed
    } else {
        Obstruction::Obstructed
    }
}

/// `t^k − t^{k−1} − … − 1` for `k ≥ 2`.
pub fn multinacci_poly(k: usize) -> IntPoly {
    let mut c = vec![-BigInt::one(); k + 1];
    c[k] = BigInt::one();
    IntPoly::new(c)
}

/// Whether `β` is the multinacci number of some order `k ≥ 2`.
pub fn is_multinacci(beta: &AlgebraicReal) -> bool {
    let p = beta.minimal_polynomial();
    p.deg() >= 2 && p == multinacci_poly(p.deg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::roots_in;
    use crate::scalar::ratio;

    fn root(p: &str) -> AlgebraicReal {
        let p: IntPoly = p.parse().unwrap();
        roots_in(&p, &ratio(1, 1), &ratio(2, 1)).pop().unwrap()
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(matching_obstruction(&root("t^3-2t-2")), Obstruction::Obstructed);
        assert_eq!(matching_obstruction(&root("t^2-t-1")), Obstruction::NotObstructed);
        assert!(is_multinacci(&root("t^2-t-1")));
        assert!(is_multinacci(&root("t^3-t^2-t-1")));
        assert!(!is_multinacci(&root("t^3-2t-2")));
        assert!(!is_multinacci(&root("t^3-t^2-1")));
    }
}
