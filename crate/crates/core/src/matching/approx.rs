use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::interval::same_matching;
use super::report::matching_time;
use crate::algebra::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::kneading::{alpha_in_field, beta_from_pair};
use crate::structure::is_admissible;
use crate::words::{EPWord, KneadingPair};

/// Largest period tried before giving up.
const MAX_K: usize = 4096;

/// One `k` from the construction, with the `n` and `j` that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub k: usize,
    pub n: usize,
    pub j: usize,
    pub pair: KneadingPair,
    /// Whether the periodic pair is admissible, i.e. `k` lies in `𝒦′`.
    pub accepted: bool,
}

/// A periodic pair on the same fiber close to the input, with its certificate.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub input: KneadingPair,
    pub output: KneadingPair,
    /// `None` when the input is already an SFT pair.
    pub k: Option<usize>,
    /// Candidates passing the `ε` test but rejected before `k`.
    pub rejected: Vec<usize>,
    pub alpha: FieldElement,
    pub alpha_out: FieldElement,
    /// `β^{−(k−1)}`, or zero for the identity.
    pub bound: FieldElement,
    pub same_matching: bool,
}

impl Approximation {
    /// Exact check of `|α − α′| ≤ β^{−(k−1)}`.
    pub fn gap_within_bound(&self) -> bool {
        let d = &self.alpha - &self.alpha_out;
        let d = if d.signum() == Ordering::Less { -d } else { d };
        d.cmp_value(&self.bound) != Ordering::Greater
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        let gap = (&self.alpha - &self.alpha_out).enclosure(bits);
        let dec = |q: &BigRational| crate::algebra::real::format_decimal(q, digits);
        json!({
            "input": self.input.to_string(),
            "output": self.output.to_string(),
            "k": self.k,
            "rejected": self.rejected,
            "bound": dec(self.bound.enclosure(bits).hi()),
            "alpha_gap": [dec(gap.lo()), dec(gap.hi())],
            "same_matching": self.same_matching,
            "within_bound": self.gap_within_bound(),
        })
    }
}

/// `(j, k)` for an index `n` (1-based) with `w_n = 0`.
fn construct_k(w: &EPWord, n: usize, cap: usize) -> Option<(usize, usize)> {
    let ws = w.prefix(cap + 2);
    let j = (1..n).find(|&j| ws[j..n] == ws[..n - j])?;
    let k = (n..=cap).find(|&k| ws[k] == 0 && ws[k - j] == 1)?;
    Some((j, k))
}

fn candidate(v: &EPWord, w: &EPWord, m: usize, n: usize, j: usize, k: usize) -> Result<Candidate> {
    let wk = w.prefix(k);
    let mut vk = v.prefix(m);
    vk.extend_from_slice(&wk[m..]);
    let pair = KneadingPair::new(EPWord::periodic(&vk)?, EPWord::periodic(&wk)?)?;
    let accepted = is_admissible(&pair);
    Ok(Candidate {
        k,
        n,
        j,
        pair,
        accepted,
    })
}

/// All distinct `k ≤ max_k` produced by the construction, in increasing order.
pub fn approximation_candidates(pair: &KneadingPair, max_k: usize) -> Result<Vec<Candidate>> {
    let report = matching_time(pair)?;
    if !report.has_matching {
        return Err(Error::NoMatching);
    }
    let (v, w) = (pair.kplus(), pair.kminus());
    let m = report.m;
    let mut out: BTreeMap<usize, Candidate> = BTreeMap::new();
    for n in m + 1..=max_k {
        if w.at(n - 1) != 0 {
            continue;
        }
        if let Some((j, k)) = construct_k(w, n, max_k) {
            if let std::collections::btree_map::Entry::Vacant(e) = out.entry(k) {
                e.insert(candidate(v, w, m, n, j, k)?);
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Periodic pair with the same matching and `|α − α′| ≤ β^{−(k−1)} ≤ ε`.
pub fn sft_approximate(pair: &KneadingPair, epsilon: &BigRational) -> Result<Approximation> {
    let report = matching_time(pair)?;
    if !report.has_matching {
        return Err(Error::NoMatching);
    }
    let field = NumberField::new(&beta_from_pair(pair)?);
    let alpha = alpha_in_field(pair, &field)?;
    if pair.is_purely_periodic() {
        return Ok(Approximation {
            input: pair.clone(),
            output: pair.clone(),
            k: None,
            rejected: Vec::new(),
            alpha_out: alpha.clone(),
            alpha,
            bound: FieldElement::zero(&field),
            same_matching: true,
        });
    }
    let beta = FieldElement::generator(&field);
    let eps = FieldElement::from_rational(&field, epsilon.clone());
    // β^{k−1} · ε ≥ 1.
    let small_enough = |k: usize| (&beta.pow(k - 1) * &eps).cmp_value(&FieldElement::one(&field)) != Ordering::Less;
    let (v, w) = (pair.kplus(), pair.kminus());
    let m = report.m;
    let mut pending: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut rejected = Vec::new();
    for n in m + 1..=MAX_K {
        if w.at(n - 1) == 0 {
            if let Some((j, k)) = construct_k(w, n, MAX_K) {
                pending.entry(k).or_insert((n, j));
            }
        }
        // Every later k is at least n, so pending entries below n are final.
        while let Some((&k, &(cn, j))) = pending.iter().next() {
            if k >= n {
                break;
            }
            pending.remove(&k);
            if !small_enough(k) {
                continue;
            }
            let c = candidate(v, w, m, cn, j, k)?;
            if !c.accepted {
                rejected.push(k);
                continue;
            }
            let alpha_out = alpha_in_field(&c.pair, &field)?;
            let bound = beta.pow(k - 1).inv()?;
            return Ok(Approximation {
                input: pair.clone(),
                same_matching: same_matching(pair, &c.pair),
                output: c.pair,
                k: Some(k),
                rejected,
                alpha,
                alpha_out,
                bound,
            });
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no admissible periodic approximation with period up to {MAX_K}"
    )))
}
