use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::report::{matching_time, MatchingReport};
use crate::algebra::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::kneading::{alpha_in_field, beta_from_pair};
use crate::structure::is_weak_admissible;
use crate::words::{EPWord, FinWord, KneadingPair};

/// One end of an interval of `α` values.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaBound {
    pub value: FieldElement,
    pub closed: bool,
}

/// Type of the parameter at an interval endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndpointClass {
    /// The endpoint lies in the SFT set and belongs to the interval.
    Sft,
    /// Sofic without matching; the interval is open there.
    SoficNotMatching,
    /// `α = 0` or `α = 2 − β`.
    BoundaryOfDelta,
}

impl fmt::Display for EndpointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointClass::Sft => "SFT",
            EndpointClass::SoficNotMatching => "SoficNotMatching",
            EndpointClass::BoundaryOfDelta => "BoundaryOfDelta",
        })
    }
}

/// Which endpoint computation to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalMethod {
    Inequalities,
    Extension,
    /// Both, with exact agreement required.
    Both,
}

/// Endpoint kneading pairs and their `α` values.
#[derive(Clone, Debug)]
pub struct EndpointPairs {
    pub left: KneadingPair,
    pub right: KneadingPair,
    pub left_alpha: FieldElement,
    pub right_alpha: FieldElement,
    pub left_case: ExtensionCase,
    pub right_case: ExtensionCase,
}

/// The three shapes of the smallest weak admissible extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionCase {
    /// No 1 among `a_3 … a_m`; the extension is `10^∞`.
    NoOne,
    /// `a_m = 0`, `b_m = 1`.
    Closed,
    /// `a_m = 1`, `b_m = 0`.
    Open,
}

/// The set of `α` on a fiber sharing one matching.
#[derive(Clone, Debug)]
pub struct MatchingInterval {
    field: Arc<NumberField>,
    pub m: usize,
    pub prefix_plus: Vec<u8>,
    pub prefix_minus: Vec<u8>,
    pub left: AlphaBound,
    pub right: AlphaBound,
    pub left_pair: KneadingPair,
    pub right_pair: KneadingPair,
    pub left_class: EndpointClass,
    pub right_class: EndpointClass,
}

fn upper_limit(field: &Arc<NumberField>) -> FieldElement {
    &FieldElement::from_int(field, 2) - &FieldElement::generator(field)
}

/// The `2m` inequalities on `α` from the first `m` symbols of each word,
/// intersected with the open fiber `(0, 2 − β)`.
pub fn inequality_bounds(field: &Arc<NumberField>, a: &[u8], b: &[u8]) -> Result<(AlphaBound, AlphaBound)> {
    let m = a.len();
    let beta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let mut lower = AlphaBound {
        value: FieldElement::zero(field),
        closed: false,
    };
    let mut upper = AlphaBound {
        value: upper_limit(field),
        closed: false,
    };
    let mut powers = vec![one.clone()];
    for i in 1..=m {
        powers.push(&powers[i - 1] * &beta);
    }
    let mut s = FieldElement::zero(field);
    for k in 1..m {
        s = &s + &powers[k - 1];
        let s_inv = s.inv()?;
        let mut u = one.clone();
        // b_2 = 1 contributes β^{k−1} once x⁻ has taken a step.
        let mut v = &one - &powers[k];
        if k >= 2 {
            v = &v + &powers[k - 1];
        }
        for i in 3..=k {
            if a[i - 1] == 1 {
                u = &u + &powers[k - i + 1];
            }
            if b[i - 1] == 1 {
                v = &v + &powers[k + 1 - i];
            }
        }
        let u = &u * &s_inv;
        let v = &v * &s_inv;
        if a[k] == 0 {
            tighten_upper(&mut upper, u, false);
        } else {
            tighten_lower(&mut lower, u, true);
        }
        if b[k] == 0 {
            tighten_upper(&mut upper, v, true);
        } else {
            tighten_lower(&mut lower, v, false);
        }
    }
    match lower.value.cmp_value(&upper.value) {
        Ordering::Greater => Err(Error::InternalInconsistency("empty matching interval".into())),
        Ordering::Equal if !(lower.closed && upper.closed) => {
            Err(Error::InternalInconsistency("empty matching interval".into()))
        }
        _ => Ok((lower, upper)),
    }
}

fn tighten_lower(cur: &mut AlphaBound, value: FieldElement, closed: bool) {
    match value.cmp_value(&cur.value) {
        Ordering::Greater => *cur = AlphaBound { value, closed },
        Ordering::Equal => cur.closed &= closed,
        Ordering::Less => {}
    }
}

fn tighten_upper(cur: &mut AlphaBound, value: FieldElement, closed: bool) {
    match value.cmp_value(&cur.value) {
        Ordering::Less => *cur = AlphaBound { value, closed },
        Ordering::Equal => cur.closed &= closed,
        Ordering::Greater => {}
    }
}

/// Smallest weak admissible extension `(a η, b η)` of the two prefixes, with
/// `k−` replaced by its periodic closure when its orbit reaches `k+`.
///
/// At the endpoint one of the two orbits lands on `c`. Either `k+` becomes
/// periodic with a period `k` that overlaps `a` with itself, or `σ^r k−`
/// becomes `k+` for an `r` where the tail of `b` overlaps `a`. Every such
/// candidate is built and the smallest weak admissible one is returned.
pub fn left_extension(a: &[u8], b: &[u8]) -> Result<(KneadingPair, ExtensionCase)> {
    let m = a.len();
    if m < 2 || b.len() != m {
        return Err(Error::Malformed("prefixes must have equal length at least 2".into()));
    }
    let mut candidates: Vec<(EPWord, ExtensionCase)> = Vec::new();
    if !a[2..].contains(&1) {
        candidates.push((EPWord::new(&[1], &[0])?, ExtensionCase::NoOne));
    }
    for k in 2..m {
        if a[k..] == a[..m - k] {
            candidates.push((EPWord::periodic(&a[..k])?, ExtensionCase::Closed));
        }
    }
    for r in 2..m {
        if b[r..] == a[..m - r] {
            candidates.push((EPWord::new(&a[..m - r], &a[m - r..])?, ExtensionCase::Open));
        }
    }
    let mut best: Option<(KneadingPair, ExtensionCase)> = None;
    for (kplus, case) in candidates {
        let raw = EPWord::prepend(b, &kplus.shift(m));
        let bound = raw.orbit_len() + kplus.orbit_len();
        let kminus = match (1..=bound).find(|&n| raw.shift(n) == kplus) {
            Some(n) => EPWord::periodic(&raw.prefix(n))?,
            None => raw.clone(),
        };
        let Ok(pair) = KneadingPair::new(kplus.clone(), kminus) else {
            continue;
        };
        let raw_ok = KneadingPair::new(kplus, raw).is_ok_and(|p| is_weak_admissible(&p));
        if !(raw_ok || is_weak_admissible(&pair)) {
            continue;
        }
        let smaller = best.as_ref().is_none_or(|(p, _)| {
            (pair.kplus(), pair.kminus()).cmp(&(p.kplus(), p.kminus())) == Ordering::Less
        });
        if smaller {
            best = Some((pair, case));
        }
    }
    best.ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "no weak admissible extension of {}, {}",
            FinWord::new(a.to_vec()),
            FinWord::new(b.to_vec())
        ))
    })
}

fn flip(w: &[u8]) -> Vec<u8> {
    w.iter().map(|s| 1 - s).collect()
}

/// Both endpoints by extension; the right one through the mirror `α ↦ 2 − β − α`.
pub fn extension_endpoints(field: &Arc<NumberField>, a: &[u8], b: &[u8]) -> Result<EndpointPairs> {
    let (left, left_case) = left_extension(a, b)?;
    let left_alpha = alpha_in_field(&left, field)?;
    let (mirror_left, right_case) = left_extension(&flip(b), &flip(a))?;
    let mirror_alpha = alpha_in_field(&mirror_left, field)?;
    Ok(EndpointPairs {
        left,
        right: mirror_left.mirror(),
        left_alpha,
        right_alpha: &upper_limit(field) - &mirror_alpha,
        left_case,
        right_case,
    })
}

fn classify(field: &Arc<NumberField>, alpha: &FieldElement, case: ExtensionCase) -> EndpointClass {
    if alpha.is_zero() || *alpha == upper_limit(field) {
        return EndpointClass::BoundaryOfDelta;
    }
    match case {
        ExtensionCase::Closed | ExtensionCase::NoOne => EndpointClass::Sft,
        ExtensionCase::Open => EndpointClass::SoficNotMatching,
    }
}

/// Matching interval of the parameters whose kneading words begin with `a` and `b`.
pub fn interval_from_prefixes(
    field: &Arc<NumberField>,
    a: &[u8],
    b: &[u8],
    method: IntervalMethod,
) -> Result<MatchingInterval> {
    let ends = extension_endpoints(field, a, b)?;
    let left_class = classify(field, &ends.left_alpha, ends.left_case);
    let right_class = classify(field, &ends.right_alpha, ends.right_case);
    let by_class = |c: EndpointClass| c == EndpointClass::Sft;
    let (left, right) = match method {
        IntervalMethod::Extension => (
            AlphaBound {
                value: ends.left_alpha.clone(),
                closed: by_class(left_class),
            },
            AlphaBound {
                value: ends.right_alpha.clone(),
                closed: by_class(right_class),
            },
        ),
        IntervalMethod::Inequalities | IntervalMethod::Both => {
            let (l, r) = inequality_bounds(field, a, b)?;
            if method == IntervalMethod::Both {
                let agree = l.value == ends.left_alpha
                    && r.value == ends.right_alpha
                    && l.closed == by_class(left_class)
                    && r.closed == by_class(right_class);
                if !agree {
                    return Err(Error::InternalInconsistency(format!(
                        "endpoint methods disagree for prefixes {}, {}: [{:.6}, {:.6}] vs [{:.6}, {:.6}]",
                        FinWord::new(a.to_vec()),
                        FinWord::new(b.to_vec()),
                        l.value.to_f64(),
                        r.value.to_f64(),
                        ends.left_alpha.to_f64(),
                        ends.right_alpha.to_f64()
                    )));
                }
            }
            (l, r)
        }
    };
    Ok(MatchingInterval {
        field: field.clone(),
        m: a.len(),
        prefix_plus: a.to_vec(),
        prefix_minus: b.to_vec(),
        left,
        right,
        left_pair: ends.left,
        right_pair: ends.right,
        left_class,
        right_class,
    })
}

fn field_of(pair: &KneadingPair) -> Result<Arc<NumberField>> {
    Ok(NumberField::new(&beta_from_pair(pair)?))
}

fn prefixes(pair: &KneadingPair, report: &MatchingReport) -> Result<(Vec<u8>, Vec<u8>)> {
    if !report.has_matching {
        return Err(Error::NoMatching);
    }
    Ok((pair.kplus().prefix(report.m), pair.kminus().prefix(report.m)))
}

/// Interval from the `2m` inequalities.
pub fn matching_interval_inequalities(pair: &KneadingPair, report: &MatchingReport) -> Result<MatchingInterval> {
    let (a, b) = prefixes(pair, report)?;
    interval_from_prefixes(&field_of(pair)?, &a, &b, IntervalMethod::Inequalities)
}

/// Endpoint pairs and values from the smallest and largest weak admissible extensions.
pub fn endpoints_by_extension(pair: &KneadingPair, report: &MatchingReport) -> Result<EndpointPairs> {
    let (a, b) = prefixes(pair, report)?;
    extension_endpoints(&field_of(pair)?, &a, &b)
}

/// Recomputes the endpoint classes of an interval.
pub fn classify_endpoints(interval: &MatchingInterval) -> MatchingInterval {
    let mut out = interval.clone();
    let ends = extension_endpoints(&interval.field, &interval.prefix_plus, &interval.prefix_minus)
        .expect("interval prefixes were already extended");
    out.left_class = classify(&interval.field, &interval.left.value, ends.left_case);
    out.right_class = classify(&interval.field, &interval.right.value, ends.right_case);
    out
}

/// Matching interval of a linearizable pair with matching.
pub fn matching_interval(pair: &KneadingPair, method: IntervalMethod) -> Result<MatchingInterval> {
    let report = matching_time(pair)?;
    let (a, b) = prefixes(pair, &report)?;
    interval_from_prefixes(&field_of(pair)?, &a, &b, method)
}

/// Same matching time and the same symbols up to it.
pub fn same_matching(p1: &KneadingPair, p2: &KneadingPair) -> bool {
    let r1 = super::report::detect_matching(p1);
    let r2 = super::report::detect_matching(p2);
    r1.has_matching
        && r2.has_matching
        && r1.m == r2.m
        && p1.kplus().prefix(r1.m) == p2.kplus().prefix(r1.m)
        && p1.kminus().prefix(r1.m) == p2.kminus().prefix(r1.m)
}

impl MatchingInterval {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn time(&self) -> usize {
        self.m - 1
    }

    pub fn is_singleton(&self) -> bool {
        self.left.value == self.right.value
    }

    pub fn contains(&self, alpha: &FieldElement) -> bool {
        let lo = alpha.cmp_value(&self.left.value);
        let hi = alpha.cmp_value(&self.right.value);
        (lo == Ordering::Greater || (lo == Ordering::Equal && self.left.closed))
            && (hi == Ordering::Less || (hi == Ordering::Equal && self.right.closed))
    }

    /// Whether the closures of the two intervals meet.
    pub fn closure_meets(&self, other: &MatchingInterval) -> bool {
        self.left.value.cmp_value(&other.right.value) != Ordering::Greater
            && other.left.value.cmp_value(&self.right.value) != Ordering::Greater
    }

    /// Image under `α ↦ 2 − β − α`.
    pub fn mirror(&self) -> MatchingInterval {
        let top = upper_limit(&self.field);
        MatchingInterval {
            field: self.field.clone(),
            m: self.m,
            prefix_plus: flip(&self.prefix_minus),
            prefix_minus: flip(&self.prefix_plus),
            left: AlphaBound {
                value: &top - &self.right.value,
                closed: self.right.closed,
            },
            right: AlphaBound {
                value: &top - &self.left.value,
                closed: self.left.closed,
            },
            left_pair: self.right_pair.mirror(),
            right_pair: self.left_pair.mirror(),
            left_class: self.right_class,
            right_class: self.left_class,
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let end = |b: &AlphaBound, p: &KneadingPair, c: EndpointClass| {
            json!({
                "alpha": b.value.to_algebraic().to_json(digits),
                "closed": b.closed,
                "pair": p.to_string(),
                "class": c.to_string(),
            })
        };
        json!({
            "beta": self.field.beta().to_json(digits),
            "time": self.time(),
            "singleton": self.is_singleton(),
            "left": end(&self.left, &self.left_pair, self.left_class),
            "right": end(&self.right, &self.right_pair, self.right_class),
        })
    }

    pub fn to_string_with(&self, digits: usize) -> String {
        let d = |x: &FieldElement| x.to_algebraic().to_decimal(digits);
        format!(
            "{}{}, {}{}",
            if self.left.closed { '[' } else { '(' },
            d(&self.left.value),
            d(&self.right.value),
            if self.right.closed { ']' } else { ')' }
        )
    }
}
