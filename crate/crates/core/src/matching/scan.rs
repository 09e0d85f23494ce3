use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::interval::{interval_from_prefixes, IntervalMethod, MatchingInterval};
use super::obstruction::{is_multinacci, matching_obstruction, Obstruction};
use crate::algebra::{AlgebraicReal, FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::kneading::sign_within;
use crate::words::all_words;

/// Parameters of [`scan_fiber`].
#[derive(Clone, Debug)]
pub struct ScanConfig {
    /// Number of grid cells; samples are `α_i = (i/grid)(2 − β)`, `0 < i < grid`.
    pub grid: usize,
    /// Orbit steps tried per sample.
    pub depth: usize,
    /// Refinement budget for each symbol decision.
    pub budget_bits: u32,
    /// Longest period of the purely periodic pairs enumerated for SFT points.
    pub max_period: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid: 2000,
            depth: 60,
            budget_bits: 256,
            max_period: 10,
        }
    }
}

/// Matching intervals found on one fiber, with the samples left open.
#[derive(Clone, Debug)]
pub struct FiberScan {
    pub field: Arc<NumberField>,
    pub obstruction: Obstruction,
    pub multinacci: bool,
    /// Sorted by `α`.
    pub intervals: Vec<MatchingInterval>,
    /// Runs of consecutive grid samples with no certified matching.
    pub unresolved: Vec<(FieldElement, FieldElement)>,
    /// Whether all interval closures are pairwise disjoint.
    pub disjoint: bool,
}

/// First `m` symbols of both kneading words when `(T+)^m(c) = (T−)^m(c)`
/// for some `m ≤ depth`; `Err(())` if a symbol could not be decided.
fn orbit_prefixes(
    field: &Arc<NumberField>,
    alpha: &FieldElement,
    depth: usize,
    budget: u32,
) -> std::result::Result<Option<(Vec<u8>, Vec<u8>)>, ()> {
    let beta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let c = &(&one - alpha) * &beta.inv().map_err(|_| ())?;
    let mut x = FieldElement::zero(field);
    let mut y = one.clone();
    let (mut a, mut b) = (vec![1u8], vec![0u8]);
    for _ in 1..=depth {
        if x == y {
            return Ok(Some((a, b)));
        }
        let sa = match sign_within(&(&x - &c), budget).ok_or(())? {
            Ordering::Less => 0,
            _ => 1,
        };
        let sb = match sign_within(&(&y - &c), budget).ok_or(())? {
            Ordering::Greater => 1,
            _ => 0,
        };
        a.push(sa);
        b.push(sb);
        x = &(&(&beta * &x) + alpha) - &FieldElement::from_int(field, sa as i64);
        y = &(&(&beta * &y) + alpha) - &FieldElement::from_int(field, sb as i64);
    }
    Ok(None)
}

/// `α` values `(β − 1)(K_w(1/β) − 1)` of all primitive periodic words `w`
/// of length `2..=max_period` beginning with `start`.
fn periodic_alphas(field: &Arc<NumberField>, start: [u8; 2], max_period: usize) -> Vec<FieldElement> {
    let beta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let x = beta.inv().expect("beta is nonzero");
    let mut powers = vec![one.clone()];
    for i in 1..=max_period {
        powers.push(&powers[i - 1] * &x);
    }
    let mut out = Vec::new();
    for p in 2..=max_period {
        let geom = (&one - &powers[p]).inv().expect("x < 1");
        for tail in all_words(p - 2) {
            let mut w = start.to_vec();
            w.extend(tail);
            if crate::words::EPWord::periodic(&w).map(|e| e.period_len()) != Ok(p) {
                continue;
            }
            let mut s = FieldElement::zero(field);
            for (i, &d) in w.iter().enumerate() {
                if d == 1 {
                    s = &s + &powers[i];
                }
            }
            out.push(&(&beta - &one) * &(&(&s * &geom) - &one));
        }
    }
    out
}

/// `α` with `K+(1/β) = K−(1/β)` for some pair of short periodic words.
fn periodic_candidates(field: &Arc<NumberField>, max_period: usize) -> Vec<FieldElement> {
    if !field.is_canonical() {
        return Vec::new();
    }
    let plus = periodic_alphas(field, [1, 0], max_period);
    let minus = periodic_alphas(field, [0, 1], max_period);
    let key = |e: &FieldElement| e.coeffs().to_vec();
    let minus_keys: HashMap<Vec<BigRational>, ()> = minus.iter().map(|e| (key(e), ())).collect();
    let mut seen = HashMap::new();
    let top = &FieldElement::from_int(field, 2) - &FieldElement::generator(field);
    plus.into_iter()
        .filter(|a| minus_keys.contains_key(&key(a)))
        .filter(|a| a.signum() == Ordering::Greater && a.cmp_value(&top) == Ordering::Less)
        .filter(|a| seen.insert(key(a), ()).is_none())
        .collect()
}

/// Samples the fiber of `β`, certifies matching at each sample exactly and
/// replaces each group of samples by its exact matching interval.
///
/// Short periodic pairs are also enumerated so that singleton intervals,
/// which a grid misses, are found. Discovery is not claimed to be complete;
/// samples without a certified matching are returned as unresolved runs.
pub fn scan_fiber(beta: &AlgebraicReal, cfg: &ScanConfig) -> Result<FiberScan> {
    let b = beta.to_f64();
    if !(1.0..2.0).contains(&b) || beta.cmp_exact(&AlgebraicReal::from_integer(1)) != Ordering::Greater {
        return Err(Error::Domain("beta must lie in (1, 2)".into()));
    }
    if cfg.grid < 2 {
        return Err(Error::Domain("grid must be at least 2".into()));
    }
    let field = NumberField::new(beta);
    let obstruction = matching_obstruction(beta);
    let multinacci = is_multinacci(beta);
    if obstruction == Obstruction::Obstructed {
        return Ok(FiberScan {
            field,
            obstruction,
            multinacci,
            intervals: Vec::new(),
            unresolved: Vec::new(),
            disjoint: true,
        });
    }
    let top = &FieldElement::from_int(&field, 2) - &FieldElement::generator(&field);
    let samples: Vec<FieldElement> = (1..cfg.grid)
        .map(|i| &FieldElement::from_rational(&field, BigRational::new(i.into(), cfg.grid.into())) * &top)
        .collect();
    let extra = periodic_candidates(&field, cfg.max_period);
    let results: Vec<_> = samples
        .par_iter()
        .chain(extra.par_iter())
        .map(|a| orbit_prefixes(&field, a, cfg.depth, cfg.budget_bits))
        .collect();

    let mut groups: HashMap<(Vec<u8>, Vec<u8>), Vec<usize>> = HashMap::new();
    let all: Vec<&FieldElement> = samples.iter().chain(extra.iter()).collect();
    for (i, r) in results.iter().enumerate() {
        if let Ok(Some(key)) = r {
            groups.entry(key.clone()).or_default().push(i);
        }
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    let mut intervals = keys
        .par_iter()
        .map(|(a, b)| interval_from_prefixes(&field, a, b, IntervalMethod::Both))
        .collect::<Result<Vec<_>>>()?;
    for (iv, key) in intervals.iter().zip(&keys) {
        if let Some(i) = groups[key].iter().find(|&&i| !iv.contains(all[i])) {
            return Err(Error::InternalInconsistency(format!(
                "sample alpha = {:.6} lies outside its matching interval",
                all[*i].to_f64()
            )));
        }
    }
    intervals.sort_by(|x, y| x.left.value.cmp_value(&y.left.value));

    let mut unresolved = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for (i, r) in results.iter().take(samples.len()).enumerate() {
        let open = !matches!(r, Ok(Some(_))) && !intervals.iter().any(|iv| iv.contains(&samples[i]));
        run = match (open, run) {
            (true, None) => Some((i, i)),
            (true, Some((s, _))) => Some((s, i)),
            (false, Some((s, e))) => {
                unresolved.push((samples[s].clone(), samples[e].clone()));
                None
            }
            (false, None) => None,
        };
    }
    if let Some((s, e)) = run {
        unresolved.push((samples[s].clone(), samples[e].clone()));
    }

    let disjoint = closures_disjoint(&intervals);
    Ok(FiberScan {
        field,
        obstruction,
        multinacci,
        intervals,
        unresolved,
        disjoint,
    })
}

/// Whether the closures of all intervals are pairwise disjoint.
///
/// Pairs whose endpoint enclosures are already separated are settled without
/// exact arithmetic; the rest go through [`MatchingInterval::closure_meets`].
pub fn closures_disjoint(intervals: &[MatchingInterval]) -> bool {
    const BITS: u32 = 64;
    let ends: Vec<_> = intervals
        .iter()
        .map(|iv| (iv.left.value.enclosure(BITS), iv.right.value.enclosure(BITS)))
        .collect();
    (0..intervals.len()).all(|i| {
        (i + 1..intervals.len()).all(|j| {
            let separated = ends[i].1.hi() < ends[j].0.lo() || ends[j].1.hi() < ends[i].0.lo();
            separated || !intervals[i].closure_meets(&intervals[j])
        })
    })
}

impl FiberScan {
    pub fn beta(&self) -> AlgebraicReal {
        self.field.beta()
    }

    /// `2 − β`.
    pub fn fiber_end(&self) -> FieldElement {
        &FieldElement::from_int(&self.field, 2) - &FieldElement::generator(&self.field)
    }

    /// Whether the interval list is invariant under `α ↦ 2 − β − α`.
    pub fn is_symmetric(&self) -> bool {
        self.intervals.iter().all(|iv| {
            let m = iv.mirror();
            self.intervals.iter().any(|o| {
                o.left.value == m.left.value
                    && o.right.value == m.right.value
                    && o.left.closed == m.left.closed
                    && o.right.closed == m.right.closed
            })
        })
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let dec = |x: &FieldElement| x.to_algebraic().to_decimal(digits);
        json!({
            "beta": self.beta().to_json(digits),
            "obstructed": self.obstruction == Obstruction::Obstructed,
            "multinacci": self.multinacci,
            "intervals": self.intervals.iter().map(|i| i.to_json(digits)).collect::<Vec<_>>(),
            "unresolved": self.unresolved.iter().map(|(a, b)| json!([dec(a), dec(b)])).collect::<Vec<_>>(),
            "disjoint_closures": self.disjoint,
        })
    }

    /// One row per interval: `alpha_lo,alpha_hi,left_closed,right_closed,matching_time`.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("alpha_lo,alpha_hi,left_closed,right_closed,matching_time\n");
        for iv in &self.intervals {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                iv.left.value.to_algebraic().to_decimal(digits),
                iv.right.value.to_algebraic().to_decimal(digits),
                iv.left.closed,
                iv.right.closed,
                iv.time()
            );
        }
        out
    }

    /// A horizontal strip of the fiber `[0, 2 − β]` with intervals in blue and
    /// unresolved runs in grey.
    pub fn to_svg(&self) -> String {
        let (w, h, pad) = (1000.0, 60.0, 10.0);
        let end = self.fiber_end().to_f64();
        let x = |a: f64| pad + (w - 2.0 * pad) * a / end;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <line x1=\"{}\" y1=\"30\" x2=\"{}\" y2=\"30\" stroke=\"black\"/>\n",
            x(0.0),
            x(end)
        );
        for (a, b) in &self.unresolved {
            let (l, r) = (x(a.to_f64()), x(b.to_f64()));
            let _ = writeln!(
                out,
                "<rect x=\"{l:.2}\" y=\"36\" width=\"{:.2}\" height=\"6\" fill=\"#bbbbbb\"/>",
                (r - l).max(0.5)
            );
        }
        for iv in &self.intervals {
            let (l, r) = (x(iv.left.value.to_f64()), x(iv.right.value.to_f64()));
            let _ = writeln!(
                out,
                "<rect x=\"{l:.2}\" y=\"18\" width=\"{:.2}\" height=\"12\" fill=\"#1f5fbf\"><title>time {}</title></rect>",
                (r - l).max(1.0),
                iv.time()
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
