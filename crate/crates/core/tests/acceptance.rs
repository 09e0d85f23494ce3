//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The report is written straight to stdout, so `cargo test` shows it
//! without `--nocapture`. The test fails if any criterion fails, and
//! `ACCEPTANCE_ONLY=<n>` restricts the run to one criterion.

use std::cmp::Ordering;
use std::io::Write;
use std::sync::OnceLock;

use betamatch::algebra::real::{is_zero_at, minimal_polynomial, reciprocal_root, roots_in};
use betamatch::kneading::{
    alpha_from_pair, beta_from_pair, block_growth, count_blocks, entropy, expand, kneading_determinant,
    smallest_determinant_root, ExpandStatus,
};
use betamatch::matching::{
    approximation_candidates, detect_matching, matching_interval, matching_obstruction, matching_time,
    scan_fiber, sft_approximate, EndpointClass, FiberScan, IntervalMethod, Obstruction, ScanConfig,
};
use betamatch::scalar::ratio;
use betamatch::structure::{is_admissible, is_linearizable, linearize, shift_class};
use betamatch::words::{all_words, star_product};
use betamatch::{
    AlgebraicReal, EPWord, FieldElement, FinWord, IntPoly, KneadingPair, ParameterPair, Rational, ShiftClass,
    Sign,
};

/// Tolerance on `β` and `α` decimals for the single-pair reproductions.
const TOL_PARAM: f64 = 1e-4;
/// Tolerance on interval endpoints read off the fiber figure.
const TOL_ENDPOINT: f64 = 1e-3;
/// Tolerance on the multinacci fiber endpoints.
const TOL_MULTINACCI: f64 = 1e-6;
/// Relative tolerance of block growth against the entropy.
const TOL_GROWTH: f64 = 0.05;
/// Block length for the growth check.
const GROWTH_N: usize = 20;
/// Refinement budget for certified expansion.
const EXPAND_BUDGET: u32 = 256;
/// Largest lcm of periods in the exhaustive SFT suite.
const MAX_LCM: usize = 10;
/// Number of generated pairs in the approximation suite.
const APPROX_PAIRS: usize = 50;

type Check = Result<String, String>;

fn pair(s: &str) -> KneadingPair {
    s.parse().unwrap()
}

fn poly(s: &str) -> IntPoly {
    s.parse().unwrap()
}

fn root_in_1_2(p: &str) -> AlgebraicReal {
    roots_in(&poly(p), &ratio(1, 1), &ratio(2, 1)).pop().unwrap()
}

fn near(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() < tol
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn params_f64(p: &KneadingPair) -> Result<(f64, f64), String> {
    let t0 = smallest_determinant_root(p).map_err(|e| e.to_string())?;
    let beta = reciprocal_root(&t0).map_err(|e| e.to_string())?;
    let alpha = alpha_from_pair(p, &t0).map_err(|e| e.to_string())?;
    Ok((beta.to_f64(), alpha.to_f64()))
}

fn fiber_46() -> &'static FiberScan {
    static SCAN: OnceLock<FiberScan> = OnceLock::new();
    SCAN.get_or_init(|| {
        let cfg = ScanConfig {
            grid: 2000,
            depth: 60,
            ..ScanConfig::default()
        };
        scan_fiber(&root_in_1_2("t^3-t^2-1"), &cfg).unwrap()
    })
}

fn c1() -> Check {
    let p = pair("100(10) 011(10)");
    let (beta, alpha) = params_f64(&p)?;
    let golden = (5f64.sqrt() + 1.0) / 2.0;
    ensure(near(beta, golden, TOL_PARAM), format!("beta = {beta}"))?;
    ensure(near(alpha, 0.23607, TOL_PARAM), format!("alpha = {alpha}"))?;
    let r = matching_time(&p).map_err(|e| e.to_string())?;
    ensure(r.has_matching && r.time() == 2, format!("matching time {}", r.time()))?;
    let class = shift_class(&p);
    ensure(class == ShiftClass::SoficNotSft, format!("class {class}"))?;
    Ok(format!("beta = {beta:.6}, alpha = {alpha:.6}, time 2, {class}"))
}

fn c2() -> Check {
    let p = pair("(100) (01)");
    let (beta, alpha) = params_f64(&p)?;
    ensure(near(beta, 1.32472, TOL_PARAM), format!("beta = {beta}"))?;
    ensure(near(alpha, 0.24512, TOL_PARAM), format!("alpha = {alpha}"))?;
    let r = matching_time(&p).map_err(|e| e.to_string())?;
    ensure(r.has_matching && r.time() == 5, format!("matching time {}", r.time()))?;
    for method in [IntervalMethod::Inequalities, IntervalMethod::Extension, IntervalMethod::Both] {
        let i = matching_interval(&p, method).map_err(|e| e.to_string())?;
        ensure(i.is_singleton(), format!("{method:?} interval {} is not a singleton", i.to_string_with(6)))?;
    }
    Ok(format!("beta = {beta:.6}, alpha = {alpha:.6}, time 5, singleton by both methods"))
}

fn c3() -> Check {
    let scan = fiber_46();
    // (lo, hi, lo closed, hi closed)
    let expected = [
        (0.0, 0.1288, false, true),
        (0.2168, 0.2168, true, true),
        (0.3177, 0.3177, true, true),
        (0.4056, 0.5344, true, false),
    ];
    for (lo, hi, lc, rc) in expected {
        let found = scan.intervals.iter().any(|i| {
            near(i.left.value.to_f64(), lo, TOL_ENDPOINT)
                && near(i.right.value.to_f64(), hi, TOL_ENDPOINT)
                && i.left.closed == lc
                && i.right.closed == rc
        });
        ensure(found, format!("interval near ({lo}, {hi}) with flags ({lc}, {rc}) not found"))?;
    }
    ensure(scan.is_symmetric(), "interval list is not symmetric under alpha -> 2 - beta - alpha")?;
    Ok(format!(
        "{} intervals, {} unresolved runs, symmetric",
        scan.intervals.len(),
        scan.unresolved.len()
    ))
}

fn c4() -> Check {
    let p = pair("100(01) 011(10)");
    let d = kneading_determinant(&p);
    ensure(d.numerator == poly("1-t-2t^2+2t^4"), format!("numerator {}", d.numerator))?;
    let t0 = smallest_determinant_root(&p).map_err(|e| e.to_string())?;
    let mp = minimal_polynomial(&t0);
    let want = poly("2t^3+2t^2-1");
    ensure(mp == want || mp == -&want, format!("minimal polynomial {mp}"))?;
    let beta = reciprocal_root(&t0).map_err(|e| e.to_string())?;
    ensure(
        matching_obstruction(&beta) == Obstruction::Obstructed,
        "fiber not reported as obstructed",
    )?;
    let scan = scan_fiber(&beta, &ScanConfig::default()).map_err(|e| e.to_string())?;
    ensure(scan.intervals.is_empty(), format!("{} intervals on obstructed fiber", scan.intervals.len()))?;
    Ok(format!("numerator {}, minimal polynomial {mp}, obstructed, empty scan", d.numerator))
}

fn c5() -> Check {
    let p = pair("100011101101101101011(01) 011101101101101101011(01)");
    let cands = approximation_candidates(&p, 30).map_err(|e| e.to_string())?;
    let ks: Vec<usize> = cands.iter().map(|c| c.k).collect();
    let rejected: Vec<usize> = cands.iter().filter(|c| !c.accepted).map(|c| c.k).collect();
    ensure(rejected == [10, 13, 16], format!("rejected {rejected:?} among {ks:?}"))?;
    ensure(ks.iter().all(|&k| k < 18 || cands.iter().any(|c| c.k == k && c.accepted)), "a k >= 18 rejected")?;
    let a = sft_approximate(&p, &ratio(1, 2)).map_err(|e| e.to_string())?;
    ensure(a.k == Some(18) && a.rejected == [10, 13, 16], format!("k = {:?}, rejected {:?}", a.k, a.rejected))?;
    Ok(format!("K = {ks:?}, rejected {rejected:?}, accepted k = 18"))
}

fn c6() -> Check {
    let l1 = linearize(&pair("(100011011) (011100)"));
    ensure(l1 == pair("(100) (011)"), format!("got {l1}"))?;
    let l2 = linearize(&pair("(100101011010) (011010100101)"));
    ensure(l2 == pair("(100101) (011010)"), format!("got {l2}"))?;
    let s = star_product(&FinWord::new(vec![1, 0]), &FinWord::new(vec![0, 1]), &pair("(100) (01)"))
        .map_err(|e| e.to_string())?;
    ensure(s == pair("(100101) (0110)"), format!("star product {s}"))?;
    Ok(format!("{l1}; {l2}; {s}"))
}

fn c7() -> Check {
    let cases = [
        ("(1000) (01)", "1(0) (010)", EndpointClass::BoundaryOfDelta),
        ("(100010) (011111)", "(1000) (01111100)", EndpointClass::Sft),
        ("(10001) (01110)", "10(001) (011)", EndpointClass::SoficNotMatching),
    ];
    let mut out = Vec::new();
    for (input, left, class) in cases {
        let i = matching_interval(&pair(input), IntervalMethod::Both).map_err(|e| e.to_string())?;
        ensure(i.left_pair == pair(left), format!("{input}: left pair {}", i.left_pair))?;
        ensure(i.left_class == class, format!("{input}: class {}", i.left_class))?;
        out.push(format!("{} {}", i.left_pair, i.left_class));
    }
    Ok(out.join("; "))
}

/// Primitive periodic words of length `p` beginning with `start`.
fn primitive_words(start: [u8; 2], p: usize) -> Vec<EPWord> {
    all_words(p - 2)
        .filter_map(|tail| {
            let mut w = start.to_vec();
            w.extend(tail);
            EPWord::periodic(&w).ok().filter(|e| e.period_len() == p)
        })
        .collect()
}

fn c8() -> Check {
    let (mut total, mut sft, mut realized, mut bad) = (0usize, 0usize, 0usize, Vec::new());
    for p in 2..=MAX_LCM {
        for q in 2..=MAX_LCM {
            if num_integer::lcm(p, q) > MAX_LCM {
                continue;
            }
            for v in primitive_words([1, 0], p) {
                for w in primitive_words([0, 1], q) {
                    let kp = KneadingPair::new(v.clone(), w).unwrap();
                    if !is_admissible(&kp) {
                        continue;
                    }
                    total += 1;
                    if shift_class(&kp) != ShiftClass::Sft {
                        continue;
                    }
                    sft += 1;
                    if !is_linearizable(&kp).linearizable {
                        continue;
                    }
                    realized += 1;
                    if !detect_matching(&kp).has_matching && bad.len() < 5 {
                        bad.push(kp.to_string());
                    }
                }
            }
        }
    }
    ensure(bad.is_empty(), format!("counterexamples: {bad:?}"))?;
    Ok(format!(
        "{total} admissible periodic pairs, {sft} SFT, {realized} linearizable, 0 counterexamples"
    ))
}

/// Deterministic matching pairs with an aperiodic-looking preperiod.
fn generated_matching_pairs(count: usize) -> Vec<KneadingPair> {
    let mut out = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for w in betamatch::words::all_epwords(5, 4) {
        match (w.at(0), w.at(1)) {
            (1, 0) => plus.push(w),
            (0, 1) => minus.push(w),
            _ => {}
        }
    }
    for v in &plus {
        for w in &minus {
            if out.len() == count {
                return out;
            }
            let Ok(kp) = KneadingPair::new(v.clone(), w.clone()) else {
                continue;
            };
            if kp.is_purely_periodic() || !is_admissible(&kp) || !is_linearizable(&kp).linearizable {
                continue;
            }
            if matches!(matching_time(&kp), Ok(r) if r.has_matching) {
                out.push(kp);
            }
        }
    }
    out
}

fn c9() -> Check {
    let pairs = generated_matching_pairs(APPROX_PAIRS);
    ensure(pairs.len() == APPROX_PAIRS, format!("only {} pairs generated", pairs.len()))?;
    let epsilons = [ratio(1, 100), ratio(1, 10_000), ratio(1, 1_000_000)];
    for p in &pairs {
        for eps in &epsilons {
            let a = sft_approximate(p, eps).map_err(|e| format!("{p}: {e}"))?;
            let field = a.alpha.field().clone();
            let eps_f = FieldElement::from_rational(&field, eps.clone());
            ensure(a.output.is_purely_periodic(), format!("{p}: output {} not periodic", a.output))?;
            ensure(is_linearizable(&a.output).linearizable, format!("{p}: output not linearizable"))?;
            ensure(a.same_matching, format!("{p}: matching differs"))?;
            ensure(a.gap_within_bound(), format!("{p}: |alpha - alpha'| exceeds bound"))?;
            ensure(a.bound.cmp_value(&eps_f) != Ordering::Greater, format!("{p}: bound exceeds eps"))?;
        }
    }
    let plus: std::collections::BTreeSet<_> = pairs.iter().map(|p| p.kplus().clone()).collect();
    let minus: std::collections::BTreeSet<_> = pairs.iter().map(|p| p.kminus().clone()).collect();
    Ok(format!(
        "{} pairs ({} distinct k+, {} distinct k-) x {} tolerances certified",
        pairs.len(),
        plus.len(),
        minus.len(),
        epsilons.len()
    ))
}

fn fixtures() -> Vec<KneadingPair> {
    [
        "100(10) 011(10)",
        "(100) (01)",
        "(1000) (01)",
        "(100) (0110)",
        "(10) (0111)",
        "(100010) (011111)",
        "(10001) (01110)",
        "(100) (011)",
        "(100101) (011010)",
        "100011101101101101011(01) 011101101101101101011(01)",
    ]
    .iter()
    .map(|s| pair(s))
    .collect()
}

fn c10() -> Check {
    // Growth is measured as ln(N(n) / N(n/2)) / (n/2), which cancels the
    // constant prefactor of N(n); ln N(n) / n is reported alongside.
    let (mut worst, mut worst_plain): (f64, f64) = (0.0, 0.0);
    for p in fixtures() {
        let params = ParameterPair::from_pair(&p).map_err(|e| format!("{p}: {e}"))?;
        for (sign, word) in [(Sign::Plus, p.kplus()), (Sign::Minus, p.kminus())] {
            let n = word.pre_len() + 2 * word.period_len();
            let (got, status) = expand(&params, sign, n, EXPAND_BUDGET);
            ensure(status == ExpandStatus::Certified, format!("{p}: {sign:?} expansion {status:?}"))?;
            ensure(got.bits() == word.prefix(n), format!("{p}: {sign:?} expansion {got}"))?;
        }
        let h = entropy(&p).map_err(|e| e.to_string())?.to_f64();
        let g = block_growth(&p, GROWTH_N).map_err(|e| e.to_string())?;
        let rel = (g - h).abs() / h;
        worst = worst.max(rel);
        let plain = (count_blocks(&p, GROWTH_N).map_err(|e| e.to_string())? as f64).ln() / GROWTH_N as f64;
        worst_plain = worst_plain.max((plain - h).abs() / h);
        ensure(rel < TOL_GROWTH, format!("{p}: block growth {g:.5} vs entropy {h:.5}"))?;
    }
    Ok(format!(
        "expansions certified, worst growth deviation {:.2}% (ln N(n)/n: {:.2}%)",
        worst * 100.0,
        worst_plain * 100.0
    ))
}

fn c11() -> Check {
    let tri = scan_fiber(&root_in_1_2("t^3-t^2-t-1"), &ScanConfig::default()).map_err(|e| e.to_string())?;
    ensure(tri.intervals.len() == 1, format!("{} intervals on tribonacci fiber", tri.intervals.len()))?;
    let i = &tri.intervals[0];
    let end = tri.fiber_end().to_f64();
    ensure(
        near(i.left.value.to_f64(), 0.0, TOL_MULTINACCI) && near(i.right.value.to_f64(), end, TOL_MULTINACCI),
        format!("interval {}", i.to_string_with(8)),
    )?;
    ensure(!i.left.closed && !i.right.closed, "multinacci interval not open")?;
    let scan = fiber_46();
    let n = scan.intervals.len();
    // Enclosures separate most pairs; the rest are compared exactly.
    let ends: Vec<_> = scan
        .intervals
        .iter()
        .map(|i| (i.left.value.enclosure(64), i.right.value.enclosure(64)))
        .collect();
    let mut exact = 0;
    for a in 0..n {
        for b in a + 1..n {
            if ends[a].1.hi() < ends[b].0.lo() || ends[b].1.hi() < ends[a].0.lo() {
                continue;
            }
            exact += 1;
            ensure(
                !scan.intervals[a].closure_meets(&scan.intervals[b]),
                format!("closures of intervals {a} and {b} meet"),
            )?;
        }
    }
    ensure(scan.disjoint, "scan reports overlapping closures")?;
    Ok(format!(
        "tribonacci fiber is one open interval; {n} closures pairwise disjoint ({exact} pairs compared exactly)"
    ))
}

#[test]
fn acceptance_criteria() {
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let criteria: [(&str, fn() -> Check); 11] = [
        ("golden pair parameters and class", c1),
        ("singleton interval of (100)(01)", c2),
        ("four intervals on the t^3-t^2-1 fiber", c3),
        ("obstructed fiber", c4),
        ("approximation candidate set", c5),
        ("linearization and star product", c6),
        ("left endpoint pairs", c7),
        ("SFT implies matching", c8),
        ("approximation certificates", c9),
        ("expansion and block growth oracles", c10),
        ("multinacci fiber and disjoint closures", c11),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|n| n != i + 1) {
            continue;
        }
        let start = std::time::Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match result {
            Ok(detail) => format!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1)
            }
        };
        // Written past the test harness capture so the report always shows.
        let _ = writeln!(std::io::stdout(), "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn tribonacci_beta_is_multinacci() {
    let beta = root_in_1_2("t^3-t^2-t-1");
    assert!(betamatch::matching::is_multinacci(&beta));
    assert!(is_zero_at(&poly("t^3-t^2-t-1"), &beta));
    let _: Rational = ratio(1, 2);
    assert!(beta_from_pair(&pair("(1000) (01)")).is_ok());
}
