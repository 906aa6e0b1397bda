//! Exact enumeration of s/t ballot words and the resulting size
//! distribution of (s, t)-cores.
//!
//! Counts and distribution totals are kept in exact big integers; the
//! rational Catalan number `C(s+t, s) / (s+t)` is both the word count and
//! the distribution total, and the two are cross-checked in the
//! verification battery.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::anderson::size_from_pattern_sum;
use crate::error::{Error, Result};
use crate::partitions::{is_p_core_rows, max_core_size, Partition};
use crate::words::{require_coprime, BallotWord, Letter, Word};

/// `C(s+t, s) / (s+t)`: the number of s/t ballot words, equivalently the
/// number of (s, t)-cores.
pub fn rational_catalan(s: u32, t: u32) -> Result<BigUint> {
    require_coprime(s, t)?;
    // Incremental binomial: prod_{i=1..s} (t + i) / i is exact at every
    // step because C(t + i, i) is an integer.
    let mut binom = BigUint::one();
    for i in 1..=u64::from(s) {
        binom *= u64::from(t) + i;
        binom /= i;
    }
    let n = u64::from(s) + u64::from(t);
    let (q, r) = num_integer::div_rem(binom, BigUint::from(n));
    // Coprimality makes C(s+t, s) divisible by s+t.
    assert!(r.is_zero());
    Ok(q)
}

/// Prefix of a ballot word under construction: letter counts and current
/// height are all that feasibility depends on.
#[derive(Debug, Clone, Copy)]
struct PathState {
    s: u32,
    t: u32,
    s_used: u32,
    t_used: u32,
    h: i64,
}

impl PathState {
    fn new(s: u32, t: u32) -> Self {
        PathState {
            s,
            t,
            s_used: 0,
            t_used: 0,
            h: 0,
        }
    }

    fn complete(&self) -> bool {
        self.s_used == self.s && self.t_used == self.t
    }

    /// Can `l` be appended so that some ballot completion still exists?
    ///
    /// An S is always completable (spend remaining S's, then descend with
    /// the remaining T's; the descending tail never dips below 0). A T
    /// needs the landing height to stay nonnegative, which by the same
    /// tail argument is also sufficient.
    fn can_push(&self, l: Letter) -> bool {
        match l {
            Letter::S => self.s_used < self.s,
            Letter::T => self.t_used < self.t && self.h >= i64::from(self.s),
        }
    }

    fn push(&mut self, l: Letter) {
        match l {
            Letter::S => {
                self.s_used += 1;
                self.h += i64::from(self.t);
            }
            Letter::T => {
                self.t_used += 1;
                self.h -= i64::from(self.s);
            }
        }
    }

    fn pop(&mut self, l: Letter) {
        match l {
            Letter::S => {
                self.s_used -= 1;
                self.h -= i64::from(self.t);
            }
            Letter::T => {
                self.t_used -= 1;
                self.h += i64::from(self.s);
            }
        }
    }
}

/// Iterator over all s/t ballot words in lexicographic order (S < T).
pub struct BallotWords {
    state: PathState,
    letters: Vec<Letter>,
    started: bool,
    done: bool,
}

/// All s/t ballot words, lexicographically. The first word is always
/// `S...ST...T` and the number of items is [`rational_catalan`].
pub fn ballot_words(s: u32, t: u32) -> Result<BallotWords> {
    require_coprime(s, t)?;
    Ok(BallotWords {
        state: PathState::new(s, t),
        letters: Vec::with_capacity((s + t) as usize),
        started: false,
        done: false,
    })
}

impl BallotWords {
    /// Extend the current prefix to its lexicographically smallest ballot
    /// completion.
    fn fill(&mut self) {
        while !self.state.complete() {
            let l = if self.state.can_push(Letter::S) {
                Letter::S
            } else {
                Letter::T
            };
            self.state.push(l);
            self.letters.push(l);
        }
    }

    fn current(&self) -> BallotWord {
        let w = Word::from_letters(self.letters.iter().copied());
        BallotWord::new_trusted(w, self.state.s, self.state.t)
    }
}

impl Iterator for BallotWords {
    type Item = BallotWord;

    fn next(&mut self) -> Option<BallotWord> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.current());
        }
        // Backtrack to the last S that can be bumped to a T.
        loop {
            let Some(l) = self.letters.pop() else {
                self.done = true;
                return None;
            };
            self.state.pop(l);
            if l == Letter::S && self.state.can_push(Letter::T) {
                self.state.push(Letter::T);
                self.letters.push(Letter::T);
                self.fill();
                return Some(self.current());
            }
        }
    }
}

/// Exact distribution of core sizes over all s/t ballot words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeDistribution {
    s: u32,
    t: u32,
    counts: BTreeMap<u64, BigUint>,
    total: BigUint,
}

impl SizeDistribution {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Count per size, ascending by size.
    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// One `size,count` row per size, ascending, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,count\n");
        for (size, count) in &self.counts {
            let _ = writeln!(out, "{size},{count}");
        }
        out
    }

    /// JSON object with counts as decimal strings keyed by size, keys in
    /// ascending numeric order.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"s\":{},\"t\":{},\"total\":\"{}\",\"counts\":{{",
            self.s, self.t, self.total
        );
        let mut first = true;
        for (size, count) in &self.counts {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "\"{size}\":\"{count}\"");
            first = false;
        }
        out.push_str("}}");
        out
    }
}

/// Pattern accumulator carried along the enumeration walk; push is an
/// exact group operation (disjoint read and write sets), so pop restores
/// the previous counts by subtraction.
#[derive(Debug, Clone, Copy, Default)]
struct PatternAcc {
    s: u128,
    t: u128,
    st: u128,
    ts: u128,
    sts: u128,
    tst: u128,
    stst: u128,
    tsts: u128,
}

impl PatternAcc {
    fn push(&mut self, l: Letter) -> Result<()> {
        fn ov() -> Error {
            Error::Overflow {
                context: "enumeration pattern counts",
            }
        }
        match l {
            Letter::S => {
                self.tsts = self.tsts.checked_add(self.tst).ok_or_else(ov)?;
                self.sts = self.sts.checked_add(self.st).ok_or_else(ov)?;
                self.ts = self.ts.checked_add(self.t).ok_or_else(ov)?;
                self.s += 1;
            }
            Letter::T => {
                self.stst = self.stst.checked_add(self.sts).ok_or_else(ov)?;
                self.tst = self.tst.checked_add(self.ts).ok_or_else(ov)?;
                self.st = self.st.checked_add(self.s).ok_or_else(ov)?;
                self.t += 1;
            }
        }
        Ok(())
    }

    fn pop(&mut self, l: Letter) {
        match l {
            Letter::S => {
                self.s -= 1;
                self.ts -= self.t;
                self.sts -= self.st;
                self.tsts -= self.tst;
            }
            Letter::T => {
                self.t -= 1;
                self.st -= self.s;
                self.tst -= self.ts;
                self.stst -= self.sts;
            }
        }
    }

    fn pattern_sum(&self) -> Result<u128> {
        self.stst.checked_add(self.tsts).ok_or(Error::Overflow {
            context: "enumeration pattern sum",
        })
    }
}

/// Depth at which the enumeration tree is split into independent shards.
/// Shards are processed in a fixed order, so the result does not depend
/// on the number of worker threads.
const SHARD_DEPTH: usize = 10;

fn dfs_sizes(
    s: u32,
    t: u32,
    state: &mut PathState,
    acc: &mut PatternAcc,
    sink: &mut BTreeMap<u64, u64>,
) -> Result<()> {
    if state.complete() {
        let size = size_from_pattern_sum(s, t, acc.pattern_sum()?)?;
        let size = u64::try_from(size).map_err(|_| Error::Overflow {
            context: "core size exceeds u64",
        })?;
        *sink.entry(size).or_insert(0) += 1;
        return Ok(());
    }
    for l in [Letter::S, Letter::T] {
        if state.can_push(l) {
            state.push(l);
            acc.push(l)?;
            dfs_sizes(s, t, state, acc, sink)?;
            acc.pop(l);
            state.pop(l);
        }
    }
    Ok(())
}

fn collect_prefixes(state: &mut PathState, depth: usize, buf: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    if buf.len() == depth {
        out.push(buf.clone());
        return;
    }
    for l in [Letter::S, Letter::T] {
        if state.can_push(l) {
            state.push(l);
            buf.push(l);
            collect_prefixes(state, depth, buf, out);
            buf.pop();
            state.pop(l);
        }
    }
}

/// Walk every ballot word and tally the exact size distribution.
///
/// The enumeration tree is sharded on short prefixes and the shards are
/// merged in order, so threading changes wall time but never the result.
pub fn exact_size_distribution(s: u32, t: u32) -> Result<SizeDistribution> {
    require_coprime(s, t)?;
    let n = (s + t) as usize;
    let depth = SHARD_DEPTH.min(n);
    let mut prefixes = Vec::new();
    collect_prefixes(&mut PathState::new(s, t), depth, &mut Vec::new(), &mut prefixes);

    let shard_maps: Vec<BTreeMap<u64, u64>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut state = PathState::new(s, t);
            let mut acc = PatternAcc::default();
            for &l in prefix {
                state.push(l);
                acc.push(l)?;
            }
            let mut local = BTreeMap::new();
            dfs_sizes(s, t, &mut state, &mut acc, &mut local)?;
            Ok(local)
        })
        .collect::<Result<_>>()?;

    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut total = BigUint::zero();
    for shard in shard_maps {
        for (size, c) in shard {
            *counts.entry(size).or_insert_with(BigUint::zero) += c;
            total += c;
        }
    }
    Ok(SizeDistribution { s, t, counts, total })
}

/// Exact raw moments, mean, and variance of a size distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub mean: BigRational,
    pub variance: BigRational,
    /// Raw moments of order 1, 2, ..., at least the first two.
    pub raw: Vec<BigRational>,
}

/// Moments of the size distribution, exactly. `max_order` below 2 is
/// raised to 2 so that the variance is always available.
pub fn exact_moments(d: &SizeDistribution, max_order: usize) -> MomentSummary {
    let order = max_order.max(2);
    let total = BigInt::from(d.total().clone());
    let mut raw = Vec::with_capacity(order);
    for k in 1..=order {
        let mut acc = BigInt::zero();
        for (&size, count) in d.counts() {
            acc += BigInt::from(size).pow(k as u32) * BigInt::from(count.clone());
        }
        raw.push(BigRational::new(acc, total.clone()));
    }
    let mean = raw[0].clone();
    let variance = raw[1].clone() - mean.clone() * mean.clone();
    MomentSummary { mean, variance, raw }
}

/// `(s + t + 1)(s - 1)(t - 1) / 24`: the exact mean core size.
pub fn closed_form_mean(s: u32, t: u32) -> Result<BigRational> {
    require_coprime(s, t)?;
    let num = BigInt::from(s + t + 1) * BigInt::from(s - 1) * BigInt::from(t - 1);
    Ok(BigRational::new(num, BigInt::from(24)))
}

/// `s(s - 1) t(t - 1)(s + t)(s + t + 1) / 1440`: the exact variance of
/// the core size.
pub fn closed_form_variance(s: u32, t: u32) -> Result<BigRational> {
    require_coprime(s, t)?;
    let num = BigInt::from(s)
        * BigInt::from(s - 1)
        * BigInt::from(t)
        * BigInt::from(t - 1)
        * BigInt::from(s + t)
        * BigInt::from(s + t + 1);
    Ok(BigRational::new(num, BigInt::from(1440)))
}

/// Every (s, t)-core, found without the bijection: grow partitions from
/// the bottom row up and reject any row whose hooks hit s or t.
///
/// Rows are placed shortest first, so each new row goes on top and the
/// hooks of rows already placed never move again (legs only look down).
/// A placed row with a forbidden hook therefore dooms every extension,
/// and pruning on it shrinks the search tree to exactly the set of cores.
/// This relies on hook geometry alone, which is the point: it exists to
/// cross-check the word and downset machinery. The size cap is the only
/// outside mathematical input, and an error in it would surface as a
/// count mismatch against the rational Catalan number.
pub fn brute_force_cores(s: u32, t: u32) -> Result<Vec<Partition>> {
    let max = max_core_size(s, t)?;
    let max = u64::try_from(max).map_err(|_| Error::Overflow {
        context: "brute force range",
    })?;
    let (s, t) = (u64::from(s), u64::from(t));

    /// Hooks of a row of length `r` placed on top of `stack` (ascending
    /// row lengths): `r - j` plus the number of placed rows longer than
    /// `j`, for each column `j`.
    fn row_is_clean(r: u64, stack: &[u64], s: u64, t: u64) -> bool {
        for j in 0..r {
            let below = (stack.len() - stack.partition_point(|&len| len <= j)) as u64;
            let hook = r - j + below;
            if hook == s || hook == t {
                return false;
            }
        }
        true
    }

    fn grow(budget: u64, s: u64, t: u64, stack: &mut Vec<u64>, out: &mut Vec<Partition>) {
        let mut rows: Vec<u64> = stack.clone();
        rows.reverse();
        let p = Partition::new_trusted(rows);
        debug_assert!(is_p_core_rows(p.rows(), s) && is_p_core_rows(p.rows(), t));
        out.push(p);
        let min_row = stack.last().copied().unwrap_or(1);
        for r in min_row..=budget {
            if row_is_clean(r, stack, s, t) {
                stack.push(r);
                grow(budget - r, s, t, stack, out);
                stack.pop();
            }
        }
    }

    let mut all = Vec::new();
    grow(max, s, t, &mut Vec::new(), &mut all);
    all.sort_unstable_by(|a, b| (a.size(), a.rows()).cmp(&(b.size(), b.rows())));
    Ok(all)
}
