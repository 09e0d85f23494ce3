//! Finite and eventually periodic binary words.
//!
//! Text forms: a finite word is a string of `0`/`1`; an eventually periodic
//! word is `pre(period)`, e.g. `100(10)` for `100101010…`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Finite word over `{0, 1}`; may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinWord(Vec<u8>);

impl FinWord {
    /// Panics if a symbol is not 0 or 1.
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "symbols must be 0 or 1");
        FinWord(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn flip(&self) -> FinWord {
        FinWord(self.0.iter().map(|b| 1 - b).collect())
    }
}

impl From<&[u8]> for FinWord {
    fn from(bits: &[u8]) -> Self {
        FinWord::new(bits.to_vec())
    }
}

impl fmt::Display for FinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for FinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected symbol {ch:?}"),
                    })
                }
            }
        }
        Ok(FinWord(bits))
    }
}

/// Eventually periodic sequence `pre · period^∞`, always in canonical form.
///
/// Canonical means the period is primitive and the preperiod cannot be
/// shortened by rotating the period, so derived equality is equality of the
/// infinite sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EPWord {
    pre: Vec<u8>,
    period: Vec<u8>,
}

/// Smallest root of a word: the primitive `u` with `word = u^k`.
fn primitive_root(word: &[u8]) -> &[u8] {
    let n = word.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

/// Returns the canonical `(pre, period)` representation of `pre · period^∞`.
pub fn canonicalize(pre: &[u8], period: &[u8]) -> Result<EPWord> {
    if period.is_empty() {
        return Err(Error::Malformed("period must be nonempty".into()));
    }
    if pre.iter().chain(period).any(|&b| b > 1) {
        return Err(Error::Malformed("symbols must be 0 or 1".into()));
    }
    let mut period = primitive_root(period).to_vec();
    let mut pre = pre.to_vec();
    while let Some(&last) = pre.last() {
        if last != *period.last().unwrap() {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    Ok(EPWord { pre, period })
}

impl EPWord {
    pub fn new(pre: &[u8], period: &[u8]) -> Result<Self> {
        canonicalize(pre, period)
    }

    /// `word^∞`.
    pub fn periodic(word: &[u8]) -> Result<Self> {
        canonicalize(&[], word)
    }

    /// The word `prefix` followed by `tail`.
    pub fn prepend(prefix: &[u8], tail: &EPWord) -> EPWord {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&tail.pre);
        canonicalize(&pre, &tail.period).expect("valid symbols")
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn pre_len(&self) -> usize {
        self.pre.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// Symbol at 0-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// First `n` symbols.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// `σ^n(self)`.
    pub fn shift(&self, n: usize) -> EPWord {
        if n <= self.pre.len() {
            return canonicalize(&self.pre[n..], &self.period).unwrap();
        }
        let k = (n - self.pre.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(k);
        EPWord {
            pre: Vec::new(),
            period,
        }
    }

    /// Number of distinct shifts; `σ^n` for `n` in `0..orbit_len()` lists them all.
    pub fn orbit_len(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    /// Symbols that must be inspected to decide comparison with `other`.
    pub fn comparison_bound(&self, other: &EPWord) -> usize {
        self.pre.len().max(other.pre.len()) + self.period.len().lcm(&other.period.len())
    }

    /// First 0-based index where the sequences differ.
    pub fn first_difference(&self, other: &EPWord) -> Option<usize> {
        let bound = self.comparison_bound(other);
        let found = (0..bound).find(|&i| self.at(i) != other.at(i));
        debug_assert!(found.is_some() || self == other);
        found
    }

    pub fn lex_compare(&self, other: &EPWord) -> Ordering {
        match self.first_difference(other) {
            None => Ordering::Equal,
            Some(i) => self.at(i).cmp(&other.at(i)),
        }
    }

    /// `0` if equal, else `2^{1-i}` with `i` the 1-based first disagreement index.
    pub fn distance(&self, other: &EPWord) -> BigRational {
        match self.first_difference(other) {
            None => BigRational::zero(),
            Some(i) => BigRational::new(BigInt::one(), BigInt::one() << i),
        }
    }

    /// Symbol-wise complement `s(w)`.
    pub fn flip(&self) -> EPWord {
        EPWord {
            pre: self.pre.iter().map(|b| 1 - b).collect(),
            period: self.period.iter().map(|b| 1 - b).collect(),
        }
    }

    /// Replaces each 1 by `one` and each 0 by `zero`.
    pub fn substitute(&self, one: &[u8], zero: &[u8]) -> EPWord {
        let sub = |w: &[u8]| -> Vec<u8> {
            w.iter()
                .flat_map(|&b| if b == 1 { one.iter() } else { zero.iter() })
                .copied()
                .collect()
        };
        canonicalize(&sub(&self.pre), &sub(&self.period)).expect("nonempty substitution")
    }
}

impl PartialOrd for EPWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EPWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_compare(other)
    }
}

impl fmt::Display for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        f.write_str("(")?;
        for b in &self.period {
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for EPWord {
    type Err = Error;

    /// Parses `pre(period)`; the preperiod may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let mut pre = Vec::new();
        let mut period = Vec::new();
        let mut state = 0u8; // 0: preperiod, 1: inside parentheses, 2: closed
        for (pos, ch) in s.chars().enumerate() {
            match (state, ch) {
                (0, '0' | '1') => pre.push(ch as u8 - b'0'),
                (1, '0' | '1') => period.push(ch as u8 - b'0'),
                (0, '(') => state = 1,
                (1, ')') => {
                    if period.is_empty() {
                        return Err(err(pos, "empty period"));
                    }
                    state = 2;
                }
                (2, _) => return Err(err(pos, "trailing input after period")),
                (_, '(' | ')') => return Err(err(pos, "unbalanced parenthesis")),
                _ => return Err(err(pos, &format!("unexpected symbol {ch:?}"))),
            }
        }
        match state {
            2 => canonicalize(&pre, &period),
            1 => Err(err(s.chars().count(), "missing ')'")),
            _ => Err(err(s.chars().count(), "missing parenthesized period")),
        }
    }
}

/// Kneading pair `(k+, k−)`: `k+` begins `10`, `k−` begins `01`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KneadingPair {
    kplus: EPWord,
    kminus: EPWord,
}

impl KneadingPair {
    pub fn new(kplus: EPWord, kminus: EPWord) -> Result<Self> {
        if kplus.prefix(2) != [1, 0] {
            return Err(Error::InvalidPair(format!("k+ = {kplus} must begin with 10")));
        }
        if kminus.prefix(2) != [0, 1] {
            return Err(Error::InvalidPair(format!("k- = {kminus} must begin with 01")));
        }
        Ok(KneadingPair { kplus, kminus })
    }

    pub fn kplus(&self) -> &EPWord {
        &self.kplus
    }

    pub fn kminus(&self) -> &EPWord {
        &self.kminus
    }

    /// `k(0) = σ(k+)`.
    pub fn k0(&self) -> EPWord {
        self.kplus.shift(1)
    }

    /// `k(1) = σ(k−)`.
    pub fn k1(&self) -> EPWord {
        self.kminus.shift(1)
    }

    /// `k+ = 10^∞`, the boundary `α = 0`.
    pub fn is_plus_degenerate(&self) -> bool {
        self.kplus.pre == [1] && self.kplus.period == [0]
    }

    /// `k− = 01^∞`, the boundary `α = 2 − β`.
    pub fn is_minus_degenerate(&self) -> bool {
        self.kminus.pre == [0] && self.kminus.period == [1]
    }

    pub fn is_degenerate(&self) -> bool {
        self.is_plus_degenerate() || self.is_minus_degenerate()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.kplus.is_purely_periodic() && self.kminus.is_purely_periodic()
    }

    /// Pair of the mirrored map `α ↦ 2 − β − α`: `(s(k−), s(k+))`.
    pub fn mirror(&self) -> KneadingPair {
        KneadingPair {
            kplus: self.kminus.flip(),
            kminus: self.kplus.flip(),
        }
    }

    /// Least common multiple of the two period lengths.
    pub fn period_lcm(&self) -> usize {
        self.kplus.period_len().lcm(&self.kminus.period_len())
    }

    pub fn max_pre(&self) -> usize {
        self.kplus.pre_len().max(self.kminus.pre_len())
    }
}

impl fmt::Display for KneadingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kplus, self.kminus)
    }
}

impl FromStr for KneadingPair {
    type Err = Error;

    /// Parses two whitespace-separated `pre(period)` tokens.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(st)) => {
                    tokens.push((st, &s[st..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                pos: tokens.get(2).map_or(s.chars().count(), |t| s[..t.0].chars().count()),
                msg: format!("expected two words, found {}", tokens.len()),
            });
        }
        let parse = |(offset, text): (usize, &str)| {
            text.parse::<EPWord>().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: s[..offset].chars().count() + pos,
                    msg,
                },
                other => other,
            })
        };
        let kplus = parse(tokens[0])?;
        let kminus = parse(tokens[1])?;
        KneadingPair::new(kplus, kminus)
    }
}

/// The `*`-product `(w+, w−) * rk`: 1s of `rk` become `w+`, 0s become `w−`.
pub fn star_product(wplus: &FinWord, wminus: &FinWord, rk: &KneadingPair) -> Result<KneadingPair> {
    if wplus.len() <= 1 || wminus.len() <= 1 {
        return Err(Error::Malformed(
            "renormalization words must have length at least 2".into(),
        ));
    }
    if wplus.bits()[0] != 1 || wminus.bits()[0] != 0 {
        return Err(Error::Malformed("w+ must begin with 1 and w- with 0".into()));
    }
    KneadingPair::new(
        rk.kplus.substitute(wplus.bits(), wminus.bits()),
        rk.kminus.substitute(wplus.bits(), wminus.bits()),
    )
}

/// The symmetric map `s`, flipping every symbol.
pub fn symmetric_map(w: &EPWord) -> EPWord {
    w.flip()
}

/// All binary words of length `n`, in lexicographic order.
pub fn all_words(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u64..(1u64 << n)).map(move |x| (0..n).map(|i| ((x >> (n - 1 - i)) & 1) as u8).collect())
}

/// All canonical eventually periodic words with preperiod ≤ `max_pre` and period ≤ `max_period`.
pub fn all_epwords(max_pre: usize, max_period: usize) -> Vec<EPWord> {
    let mut out = std::collections::BTreeSet::new();
    for pl in 0..=max_pre {
        for q in 1..=max_period {
            for pre in all_words(pl) {
                for per in all_words(q) {
                    let w = canonicalize(&pre, &per).unwrap();
                    out.insert((w.pre.clone(), w.period.clone()));
                }
            }
        }
    }
    out.into_iter()
        .map(|(pre, period)| EPWord { pre, period })
        .collect()
}
