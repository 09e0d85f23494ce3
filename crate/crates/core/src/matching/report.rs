use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::structure::is_linearizable;
use crate::words::KneadingPair;

/// How matching shows up in the kneading pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchingCase {
    /// `σ^m(k+) = σ^m(k−)`.
    TailEqual,
    /// Both words are purely periodic and both orbits return to `c` together.
    OrbitReturn,
}

impl std::fmt::Display for MatchingCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchingCase::TailEqual => "tail_equal",
            MatchingCase::OrbitReturn => "orbit_return",
        })
    }
}

/// Result of the matching search. Matching at time `m − 1` means
/// `(T+)^m(c) = (T−)^m(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingReport {
    pub has_matching: bool,
    pub m: usize,
    pub case: Option<MatchingCase>,
    /// Common return index `i` in the orbit-return case.
    pub return_index: Option<usize>,
    /// `D_m` with `(T−)^m(c) − (T+)^m(c) = D_m(β)`.
    pub difference_poly: IntPoly,
}

impl MatchingReport {
    pub fn time(&self) -> usize {
        self.m.saturating_sub(1)
    }

    fn none() -> Self {
        MatchingReport {
            has_matching: false,
            m: 0,
            case: None,
            return_index: None,
            difference_poly: IntPoly::zero(),
        }
    }

    pub fn to_json(&self) -> Value {
        if !self.has_matching {
            return json!({ "has_matching": false });
        }
        json!({
            "has_matching": true,
            "time": self.time(),
            "m": self.m,
            "case": self.case.map(|c| c.to_string()),
            "return_index": self.return_index,
            "difference_poly": self.difference_poly.to_string(),
        })
    }
}

/// `D_m(t) = t^{m−1} − t^{m−2} + Σ_{i=3}^{m} (a_i − b_i) t^{m−i}` from the
/// first `m` symbols of each word.
pub fn difference_poly(a: &[u8], b: &[u8]) -> IntPoly {
    let m = a.len();
    assert!(m >= 2 && b.len() == m);
    let mut c = vec![BigInt::from(0); m];
    c[m - 1] += 1;
    c[m - 2] -= 1;
    for i in 3..=m {
        c[m - i] += i64::from(a[i - 1]) - i64::from(b[i - 1]);
    }
    IntPoly::new(c)
}

/// Smallest `m ≥ 2` with matching, searched up to `max_pre + 2·lcm(periods)`.
pub fn detect_matching(pair: &KneadingPair) -> MatchingReport {
    let kp = pair.kplus();
    let km = pair.kminus();
    let l = pair.period_lcm();
    let bound = pair.max_pre() + 2 * l;
    let periodic = pair.is_purely_periodic();
    for m in 2..=bound.max(2) {
        let (sp, sm) = (kp.shift(m), km.shift(m));
        let found = if sp == sm {
            Some((MatchingCase::TailEqual, None))
        } else if periodic {
            let i = (l - m % l) % l;
            (sp.prefix(i) == sm.prefix(i)).then_some((MatchingCase::OrbitReturn, Some(i)))
        } else {
            None
        };
        if let Some((case, return_index)) = found {
            return MatchingReport {
                has_matching: true,
                m,
                case: Some(case),
                return_index,
                difference_poly: difference_poly(&kp.prefix(m), &km.prefix(m)),
            };
        }
    }
    MatchingReport::none()
}

/// [`detect_matching`] for linearizable pairs.
pub fn matching_time(pair: &KneadingPair) -> Result<MatchingReport> {
    if !is_linearizable(pair).linearizable {
        return Err(Error::InvalidPair(format!("{pair} is not linearizable")));
    }
    Ok(detect_matching(pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_zero_at;
    use crate::kneading::beta_from_pair;

    fn pair(s: &str) -> KneadingPair {
        s.parse().unwrap()
    }

    #[test]
    fn matching_examples() {
        let r = matching_time(&pair("100(10) 011(10)")).unwrap();
        assert_eq!((r.time(), r.case), (2, Some(MatchingCase::TailEqual)));
        assert_eq!(r.difference_poly, "t^2-t-1".parse().unwrap());
        let r = matching_time(&pair("(100) (01)")).unwrap();
        assert_eq!((r.time(), r.case), (5, Some(MatchingCase::OrbitReturn)));
        let r = matching_time(&pair("(1000) (01)")).unwrap();
        assert_eq!((r.time(), r.case), (3, Some(MatchingCase::OrbitReturn)));
        for s in ["100(10) 011(10)", "(100) (01)", "(1000) (01)", "(10001) (01110)"] {
            let p = pair(s);
            let r = detect_matching(&p);
            assert!(is_zero_at(&r.difference_poly, &beta_from_pair(&p).unwrap()));
        }
    }

    #[test]
    fn obstructed_pair_has_no_matching() {
        assert!(!matching_time(&pair("100(01) 011(10)")).unwrap().has_matching);
    }
}
