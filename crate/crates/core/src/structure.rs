//! Validation and classification of kneading pairs.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::smallest_root_in_unit;
use crate::kneading::kneading_determinant;
use crate::words::{star_product, EPWord, FinWord, KneadingPair};

/// Shift-space type of `Ω(k+, k−)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftClass {
    Sft,
    SoficNotSft,
    NotSofic,
}

impl fmt::Display for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftClass::Sft => "SFT",
            ShiftClass::SoficNotSft => "SoficNotSFT",
            ShiftClass::NotSofic => "NotSofic",
        })
    }
}

/// Kind of a renormalization layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RenormKind {
    Periodic,
    Nonperiodic,
}

impl fmt::Display for RenormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RenormKind::Periodic => "periodic",
            RenormKind::Nonperiodic => "nonperiodic",
        })
    }
}

/// One renormalization step `pair = (w+, w−) * reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renormalization {
    pub wplus: FinWord,
    pub wminus: FinWord,
    pub reduced: KneadingPair,
    pub kind: RenormKind,
}

/// Full classification of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub admissible: bool,
    pub weak_admissible: bool,
    pub prime_or_periodic: bool,
    pub positive_entropy: bool,
    pub linearizable: bool,
    pub renorm_chain: Vec<Renormalization>,
    pub shift_class: ShiftClass,
}

impl PairClass {
    pub fn to_json(&self) -> Value {
        let chain: Vec<Value> = self
            .renorm_chain
            .iter()
            .map(|r| {
                json!({
                    "wplus": r.wplus.to_string(),
                    "wminus": r.wminus.to_string(),
                    "reduced": r.reduced.to_string(),
                    "kind": r.kind.to_string(),
                })
            })
            .collect();
        json!({
            "admissible": self.admissible,
            "weak_admissible": self.weak_admissible,
            "prime_or_periodically_renormalizable": self.prime_or_periodic,
            "positive_entropy": self.positive_entropy,
            "linearizable": self.linearizable,
            "renorm_chain": chain,
            "shift_class": self.shift_class.to_string(),
        })
    }
}

/// `σ(k+) ⪯ σⁿ(k+) ≺ σ(k−)` and `σ(k+) ≺ σⁿ(k−) ⪯ σ(k−)` for all `n ≥ 0`.
pub fn is_admissible(pair: &KneadingPair) -> bool {
    let (k0, k1) = (pair.k0(), pair.k1());
    let kp = pair.kplus();
    let km = pair.kminus();
    (0..kp.orbit_len()).all(|n| {
        let s = kp.shift(n);
        k0 <= s && s < k1
    }) && (0..km.orbit_len()).all(|n| {
        let s = km.shift(n);
        k0 < s && s <= k1
    })
}

/// The bounds of [`is_admissible`] with equality allowed on both sides.
pub fn is_weak_admissible(pair: &KneadingPair) -> bool {
    let (k0, k1) = (pair.k0(), pair.k1());
    [pair.kplus(), pair.kminus()].into_iter().all(|w| {
        (0..w.orbit_len()).all(|n| {
            let s = w.shift(n);
            k0 <= s && s <= k1
        })
    })
}

/// Cuts `w` into blocks `wplus` (at each 1) and `wminus` (at each 0).
///
/// Returns the sequence of block labels, or `None` if some block mismatches.
fn desubstitute(w: &EPWord, wplus: &[u8], wminus: &[u8]) -> Option<EPWord> {
    let pre = w.pre_len();
    let per = w.period_len();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut pos = 0;
    loop {
        if pos >= pre {
            let phase = (pos - pre) % per;
            if let Some(&start) = seen.get(&phase) {
                return EPWord::new(&labels[..start], &labels[start..]).ok();
            }
            seen.insert(phase, labels.len());
        }
        let s = w.at(pos);
        let block = if s == 1 { wplus } else { wminus };
        if block.iter().enumerate().any(|(i, &b)| w.at(pos + i) != b) {
            return None;
        }
        labels.push(s);
        pos += block.len();
    }
}

/// Rational-rotation block pair of rotation number `p/q`.
///
/// Both words have length `q`; `w+` is the coding of the orbit starting just
/// above the discontinuity and `w−` just below it.
pub fn rotation_words(p: usize, q: usize) -> (FinWord, FinWord) {
    let m = 2 * q;
    let threshold = 2 * (q - p);
    let code = |start: usize| -> FinWord {
        let mut y = start;
        let mut out = Vec::with_capacity(q);
        for _ in 0..q {
            out.push(u8::from(y >= threshold));
            y = (y + 2 * p) % m;
        }
        FinWord::new(out)
    };
    (code(threshold + 1), code(threshold - 1))
}

/// Periodic iff `(w+, w−)` equals [`rotation_words`]`(p, q)` for some coprime `p/q`.
pub fn classify_renorm_words(wplus: &FinWord, wminus: &FinWord) -> RenormKind {
    let q = wplus.len();
    if q < 2 || wminus.len() != q {
        return RenormKind::Nonperiodic;
    }
    for p in 1..q {
        if num_integer::gcd(p, q) != 1 {
            continue;
        }
        let (a, b) = rotation_words(p, q);
        if &a == wplus && &b == wminus {
            return RenormKind::Periodic;
        }
    }
    RenormKind::Nonperiodic
}

/// Shortest nontrivial decomposition `pair = (w+, w−) * reduced`, if any.
///
/// Candidates are tried by increasing `|w+| + |w−|`, then increasing `|w+|`.
pub fn renormalize_once(pair: &KneadingPair) -> Option<Renormalization> {
    let kp = pair.kplus();
    let km = pair.kminus();
    let size = kp.orbit_len() + km.orbit_len();
    let bound = size + 2 * pair.period_lcm();
    for total in 4..=bound {
        for a in 2..=total - 2 {
            let b = total - a;
            let wplus = kp.prefix(a);
            let wminus = km.prefix(b);
            let Some(rp) = desubstitute(kp, &wplus, &wminus) else {
                continue;
            };
            let Some(rm) = desubstitute(km, &wplus, &wminus) else {
                continue;
            };
            let Ok(reduced) = KneadingPair::new(rp, rm) else {
                continue;
            };
            // Self-similar pairs such as ((10)^∞, (01)^∞) decompose into
            // themselves; a genuine renormalization shortens the data.
            // A degenerate reduced pair only says k± = w± w∓^∞, which is not a
            // renormalization of the interior of the parameter space.
            if reduced.kplus().orbit_len() + reduced.kminus().orbit_len() >= size
                || reduced.is_degenerate()
            {
                continue;
            }
            let (wplus, wminus) = (FinWord::new(wplus), FinWord::new(wminus));
            let kind = classify_renorm_words(&wplus, &wminus);
            return Some(Renormalization {
                wplus,
                wminus,
                reduced,
                kind,
            });
        }
    }
    None
}

/// Repeated [`renormalize_once`] until a prime pair is reached.
pub fn renorm_chain(pair: &KneadingPair) -> Vec<Renormalization> {
    let mut chain = Vec::new();
    let mut current = pair.clone();
    while let Some(r) = renormalize_once(&current) {
        current = r.reduced.clone();
        chain.push(r);
    }
    chain
}

pub fn shift_class(pair: &KneadingPair) -> ShiftClass {
    if pair.is_purely_periodic() {
        ShiftClass::Sft
    } else {
        ShiftClass::SoficNotSft
    }
}

/// Checks admissibility, the renormalization condition and positive entropy.
pub fn is_linearizable(pair: &KneadingPair) -> PairClass {
    let admissible = is_admissible(pair);
    let weak_admissible = admissible || is_weak_admissible(pair);
    let renorm_chain = renorm_chain(pair);
    let prime_or_periodic = renorm_chain.iter().all(|r| r.kind == RenormKind::Periodic);
    let positive_entropy = smallest_root_in_unit(&kneading_determinant(pair).numerator).is_ok();
    PairClass {
        admissible,
        weak_admissible,
        prime_or_periodic,
        positive_entropy,
        linearizable: admissible && prime_or_periodic && positive_entropy,
        renorm_chain,
        shift_class: shift_class(pair),
    }
}

/// The linearizable pair with the same parameters.
///
/// The tail below the first non-periodic layer `(w+, w−)` is replaced by
/// `(w+^∞, w−^∞)` and the periodic layers above it are applied again.
pub fn linearize(pair: &KneadingPair) -> KneadingPair {
    let chain = renorm_chain(pair);
    let Some(m) = chain.iter().position(|r| r.kind == RenormKind::Nonperiodic) else {
        return pair.clone();
    };
    let bottom = &chain[m];
    let mut out = KneadingPair::new(
        EPWord::periodic(bottom.wplus.bits()).expect("nonempty"),
        EPWord::periodic(bottom.wminus.bits()).expect("nonempty"),
    )
    .expect("renormalization words begin 10 and 01");
    for r in chain[..m].iter().rev() {
        out = star_product(&r.wplus, &r.wminus, &out).expect("valid layer");
    }
    out
}

/// Whether every suffix `u` of `word` satisfies `k(0)|ℓ ⪯ u ⪯ k(1)|ℓ`.
pub fn is_allowed_block(pair: &KneadingPair, word: &[u8]) -> bool {
    let n = word.len();
    let lower = pair.k0().prefix(n);
    let upper = pair.k1().prefix(n);
    (0..n).all(|i| {
        let u = &word[i..];
        let l = u.len();
        lower[..l] <= *u && *u <= upper[..l]
    })
}

/// Minimal forbidden words up to length `max_pre + 2·lcm(periods)`.
///
/// A minimal forbidden word leaves the bounds only as a whole, so all but its
/// last symbol agree with `k(0)` or `k(1)`.
pub fn forbidden_words(pair: &KneadingPair) -> Vec<FinWord> {
    let limit = pair.max_pre() + 2 * pair.period_lcm();
    let lower = pair.k0().prefix(limit);
    let upper = pair.k1().prefix(limit);
    let mut out = Vec::new();
    for n in 1..=limit {
        let mut candidates = Vec::new();
        if lower[n - 1] == 1 {
            let mut u = lower[..n - 1].to_vec();
            u.push(0);
            candidates.push(u);
        }
        if upper[n - 1] == 0 {
            let mut u = upper[..n - 1].to_vec();
            u.push(1);
            candidates.push(u);
        }
        for u in candidates {
            if is_allowed_block(pair, &u[..n - 1]) && is_allowed_block(pair, &u[1..]) {
                out.push(FinWord::new(u));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::count_blocks;
    use crate::words::all_words;

    fn pair(s: &str) -> KneadingPair {
        s.parse().unwrap()
    }

    fn fw(s: &str) -> FinWord {
        s.parse().unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&pair("(100) (01)")));
        assert!(!is_admissible(&pair("(10) (01)")));
        assert!(is_weak_admissible(&pair("(10) (01)")));
        assert!(is_admissible(&pair("100(10) 011(10)")));
        let p = pair("1(0) 0101(0)");
        assert!(is_weak_admissible(&p) && !is_admissible(&p));
    }

    #[test]
    fn rotation_words_of_small_denominators() {
        assert_eq!(rotation_words(1, 2), (fw("10"), fw("01")));
        assert_eq!(rotation_words(1, 3), (fw("100"), fw("010")));
        assert_eq!(rotation_words(2, 3), (fw("101"), fw("011")));
        assert_eq!(classify_renorm_words(&fw("100"), &fw("011")), RenormKind::Nonperiodic);
        assert_eq!(classify_renorm_words(&fw("10"), &fw("01")), RenormKind::Periodic);
    }

    #[test]
    fn renormalization_examples() {
        let r = renormalize_once(&pair("(100101) (0110)")).unwrap();
        assert_eq!((r.wplus, r.wminus, r.reduced), (fw("10"), fw("01"), pair("(100) (01)")));
        let r = renormalize_once(&pair("(100011011) (011100)")).unwrap();
        assert_eq!((r.wplus.clone(), r.wminus.clone()), (fw("100"), fw("011")));
        assert_eq!(r.kind, RenormKind::Nonperiodic);
        assert_eq!(star_product(&r.wplus, &r.wminus, &r.reduced).unwrap(), pair("(100011011) (011100)"));
        assert!(renormalize_once(&pair("(100) (01)")).is_none());
    }

    #[test]
    fn linearization_examples() {
        assert_eq!(linearize(&pair("(100011011) (011100)")), pair("(100) (011)"));
        let p = pair("(100101011010) (011010100101)");
        let chain = renorm_chain(&p);
        assert_eq!(chain[0].kind, RenormKind::Periodic);
        assert_eq!(chain[1].kind, RenormKind::Nonperiodic);
        assert_eq!(linearize(&p), pair("(100101) (011010)"));
        assert_eq!(linearize(&pair("(100) (01)")), pair("(100) (01)"));
    }

    #[test]
    fn classification_examples() {
        let c = is_linearizable(&pair("(100) (011)"));
        assert!(c.linearizable);
        assert_eq!(c.shift_class, ShiftClass::Sft);
        assert!(!is_linearizable(&pair("(100011011) (011100)")).linearizable);
        let c = is_linearizable(&pair("100(10) 011(10)"));
        assert!(c.linearizable);
        assert_eq!(c.shift_class, ShiftClass::SoficNotSft);
    }

    #[test]
    fn forbidden_words_generate_the_language() {
        // Counting words that avoid the forbidden list agrees with the block count.
        let p = pair("(100) (01)");
        let f: Vec<Vec<u8>> = forbidden_words(&p).iter().map(|w| w.bits().to_vec()).collect();
        assert!(!f.is_empty());
        for n in 1..=10 {
            let avoid = all_words(n)
                .filter(|w| !f.iter().any(|u| w.windows(u.len()).any(|x| x == &u[..])))
                .count() as u64;
            assert_eq!(avoid, count_blocks(&p, n).unwrap());
        }
    }
}
