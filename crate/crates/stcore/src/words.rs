//! Words over the two-letter alphabet {S, T}: ballot words, prefix-height
//! geometry, subsequence pattern counting, and the cycle-lemma rotation.
//!
//! The step convention is fixed globally: an `S` moves the path up by `t`
//! and a `T` moves it down by `s`. Every height computation in the crate
//! goes through [`prefix_heights`] or the equivalent streaming loop, so
//! there is exactly one place where that convention lives.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// One of the two letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S,
    T,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::S => 'S',
            Letter::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'S' => Ok(Letter::S),
            'T' => Ok(Letter::T),
            _ => Err(Error::BadLetter { found: c }),
        }
    }
}

/// A finite word over {S, T}, stored one bit per letter (1 = T).
///
/// Packing keeps scans cache-friendly at sampling scale (lengths around
/// 10^6) while the API stays letter-oriented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: Vec<u64>,
    len: usize,
    t_count: u64,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn with_capacity(letters: usize) -> Self {
        Word {
            bits: Vec::with_capacity(letters.div_ceil(64)),
            len: 0,
            t_count: 0,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let iter = letters.into_iter();
        let mut w = Word::with_capacity(iter.size_hint().0);
        for l in iter {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, letter: Letter) {
        if self.len.is_multiple_of(64) {
            self.bits.push(0);
        }
        if letter == Letter::T {
            self.bits[self.len / 64] |= 1u64 << (self.len % 64);
            self.t_count += 1;
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn s_count(&self) -> u64 {
        self.len as u64 - self.t_count
    }

    pub fn t_count(&self) -> u64 {
        self.t_count
    }

    /// Letter at position `i` (0-based). Panics if out of range.
    pub fn letter(&self, i: usize) -> Letter {
        assert!(i < self.len, "letter index {i} out of range");
        if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            Letter::T
        } else {
            Letter::S
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len).map(|i| self.letter(i))
    }

    /// The word rotated left by `k` positions (letter `k` becomes first).
    pub fn rotated_left(&self, k: usize) -> Word {
        if self.len == 0 {
            return Word::new();
        }
        let k = k % self.len;
        Word::from_letters((0..self.len).map(|i| self.letter((i + k) % self.len)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::with_capacity(s.len());
        for c in s.chars() {
            w.push(Letter::from_char(c)?);
        }
        Ok(w)
    }
}

impl Ord for Word {
    /// Lexicographic with S < T; shorter words precede their extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters().cmp(other.letters())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word validated to be an s/t ballot word.
///
/// Invariants: `gcd(s, t) = 1`, letter counts match `(s, t)`, every prefix
/// height is nonnegative, and the walk closes at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BallotWord {
    word: Word,
    s: u32,
    t: u32,
}

impl BallotWord {
    pub fn new(word: Word, s: u32, t: u32) -> Result<Self> {
        require_coprime(s, t)?;
        if !is_ballot(&word, s, t)? {
            let position = first_negative_prefix(&word, s, t).unwrap_or(0);
            return Err(Error::NotBallot { s, t, position });
        }
        Ok(BallotWord { word, s, t })
    }

    /// Construction from code paths that guarantee validity. Checked in
    /// debug builds only; release builds skip revalidation for throughput.
    pub(crate) fn new_trusted(word: Word, s: u32, t: u32) -> Self {
        debug_assert!(matches!(is_ballot(&word, s, t), Ok(true)));
        debug_assert_eq!(num_integer::gcd(s, t), 1);
        BallotWord { word, s, t }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }
}

impl fmt::Display for BallotWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Exact subsequence counts of the four patterns needed by the size and
/// U² formulas, gathered in a single pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternCounts {
    pub st: u128,
    pub ts: u128,
    pub stst: u128,
    pub tsts: u128,
}

impl PatternCounts {
    /// The rotation-invariant statistic `#STST + #TSTS`.
    pub fn stst_plus_tsts(&self) -> Result<u128> {
        self.stst.checked_add(self.tsts).ok_or(Error::Overflow {
            context: "stst + tsts",
        })
    }
}

pub(crate) fn require_coprime(s: u32, t: u32) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::MissingLetter);
    }
    let gcd = s.gcd(&t);
    if gcd != 1 {
        return Err(Error::NotCoprime { s, t, gcd });
    }
    Ok(())
}

fn require_counts(w: &Word, s: u32, t: u32) -> Result<()> {
    if w.s_count() != u64::from(s) || w.t_count() != u64::from(t) {
        return Err(Error::LetterCountMismatch {
            s,
            t,
            actual_s: w.s_count(),
            actual_t: w.t_count(),
        });
    }
    Ok(())
}

/// Heights of the lattice path of `w`: `h[0] = 0`, then `+t` per S and
/// `-s` per T. Length is `w.len() + 1`.
pub fn prefix_heights(w: &Word, s: u32, t: u32) -> Vec<i64> {
    let mut heights = Vec::with_capacity(w.len() + 1);
    let mut h = 0i64;
    heights.push(h);
    for l in w.letters() {
        h += step(l, s, t);
        heights.push(h);
    }
    heights
}

fn step(l: Letter, s: u32, t: u32) -> i64 {
    match l {
        Letter::S => i64::from(t),
        Letter::T => -i64::from(s),
    }
}

fn first_negative_prefix(w: &Word, s: u32, t: u32) -> Option<usize> {
    let mut h = 0i64;
    for (i, l) in w.letters().enumerate() {
        h += step(l, s, t);
        if h < 0 {
            return Some(i + 1);
        }
    }
    None
}

/// Does `w` satisfy the s/t ballot condition? The letter counts must match
/// `(s, t)`; a mismatch is a contract violation, not `false`.
pub fn is_ballot(w: &Word, s: u32, t: u32) -> Result<bool> {
    require_counts(w, s, t)?;
    Ok(first_negative_prefix(w, s, t).is_none())
}

/// Exact number of occurrences of `pattern` as a (not necessarily
/// contiguous) subsequence of `w`.
///
/// Standard prefix DP, `O(|w| * |pattern|)` time. Accumulators are 128-bit
/// and checked: counts stay exact up to `C(n, 4) < 2^128`, i.e. word
/// lengths around 10^7 for the length-4 patterns used here, and any
/// overflow beyond that is reported, never wrapped.
pub fn count_subsequence(w: &Word, pattern: &Word) -> Result<u128> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let pat: Vec<Letter> = pattern.letters().collect();
    // dp[j] = number of embeddings of pat[..j] into the scanned prefix.
    let mut dp = vec![0u128; pat.len() + 1];
    dp[0] = 1;
    for l in w.letters() {
        for j in (1..=pat.len()).rev() {
            if pat[j - 1] == l {
                dp[j] = dp[j].checked_add(dp[j - 1]).ok_or(Error::Overflow {
                    context: "subsequence count",
                })?;
            }
        }
    }
    Ok(dp[pat.len()])
}

/// All four pattern counts of `w` in one left-to-right pass.
pub fn pattern_counts(w: &Word) -> Result<PatternCounts> {
    fn ov() -> Error {
        Error::Overflow {
            context: "pattern counts",
        }
    }
    let mut s = 0u128;
    let mut t = 0u128;
    let mut st = 0u128;
    let mut ts = 0u128;
    let mut sts = 0u128;
    let mut tst = 0u128;
    let mut stst = 0u128;
    let mut tsts = 0u128;
    for l in w.letters() {
        // Each prefix pattern ending in `l` absorbs the count of the
        // pattern one letter shorter; those all end in the other letter,
        // so the update order within a branch does not matter.
        match l {
            Letter::S => {
                tsts = tsts.checked_add(tst).ok_or_else(ov)?;
                sts = sts.checked_add(st).ok_or_else(ov)?;
                ts = ts.checked_add(t).ok_or_else(ov)?;
                s += 1;
            }
            Letter::T => {
                stst = stst.checked_add(sts).ok_or_else(ov)?;
                tst = tst.checked_add(ts).ok_or_else(ov)?;
                st = st.checked_add(s).ok_or_else(ov)?;
                t += 1;
            }
        }
    }
    Ok(PatternCounts { st, ts, stst, tsts })
}

/// Rotate `w` to its unique s/t ballot rotation.
///
/// Returns the ballot word together with the left-rotation offset that
/// produced it. Coprimality makes the minimum prefix height unique, so a
/// tie can only mean the caller lied about `(s, t)` and is an error.
pub fn rotate_to_ballot(w: &Word, s: u32, t: u32) -> Result<(BallotWord, usize)> {
    require_coprime(s, t)?;
    require_counts(w, s, t)?;
    let n = w.len();
    let mut h = 0i64;
    let mut min_h = 0i64;
    let mut min_idx = 0usize;
    let mut tied = false;
    // Consider cut points 0..n; heights repeat with period n.
    for (i, l) in w.letters().enumerate().take(n - 1) {
        h += step(l, s, t);
        match h.cmp(&min_h) {
            Ordering::Less => {
                min_h = h;
                min_idx = i + 1;
                tied = false;
            }
            Ordering::Equal => tied = true,
            Ordering::Greater => {}
        }
    }
    if tied {
        return Err(Error::AmbiguousRotation);
    }
    let rotated = if min_idx == 0 {
        w.clone()
    } else {
        w.rotated_left(min_idx)
    };
    Ok((BallotWord::new_trusted(rotated, s, t), min_idx))
}
