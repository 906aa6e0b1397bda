//! Anderson's bijection, in path form: s/t ballot words correspond to
//! downsets of the gap poset of `<s, t>`, which are exactly the
//! first-column hook sets of (s, t)-core partitions.
//!
//! Word to downset: the s + t distinct prefix heights of the closed path
//! are seeded into a reachability sieve; everything they generate under
//! adding s or t is struck out, and the survivors in `1..=st-s-t` form the
//! downset. Downset to word: a greedy walk from height 0 that steps down
//! by s exactly when the landing height is nonnegative and outside the
//! set, and up by t otherwise.

use crate::error::{Error, Result};
use crate::partitions::{
    first_column_hooks, is_p_core, partition_from_hookset_trusted, Downset, Partition,
};
use crate::words::{
    pattern_counts, prefix_heights, require_coprime, BallotWord, Letter, PatternCounts, Word,
};

/// The downset whose elements are the first-column hooks of the core
/// corresponding to `b`.
pub fn word_to_downset(b: &BallotWord) -> Downset {
    let (s, t) = (b.s(), b.t());
    let st = u64::from(s) * u64::from(t);
    let mut reach = vec![false; st as usize + 1];
    let heights = prefix_heights(b.word(), s, t);
    // The closing height duplicates h_0 = 0; every other vertex is a
    // distinct residue mod s + t and lies in 0..=st by the ballot bound.
    for &h in &heights[..heights.len() - 1] {
        reach[h as usize] = true;
    }
    for a in 1..=st as usize {
        if a >= s as usize && reach[a - s as usize] {
            reach[a] = true;
        }
        if a >= t as usize && reach[a - t as usize] {
            reach[a] = true;
        }
    }
    let frob = st.saturating_sub(u64::from(s) + u64::from(t));
    let elements: Vec<u64> = (1..=frob).filter(|&a| !reach[a as usize]).collect();
    Downset::new_trusted(elements, s, t)
}

/// Inverse of [`word_to_downset`]: rebuild the unique ballot word whose
/// path avoids exactly the elements of `d`.
///
/// The walk is validated as it goes; a set that is not actually closed
/// and bounded the way a downset must be fails to close the path or burns
/// the wrong number of letters, and is reported rather than trusted.
pub fn downset_to_word(d: &Downset) -> Result<BallotWord> {
    let (s, t) = (d.s(), d.t());
    let n = (s + t) as usize;
    let elements = d.elements();
    let mut word = Word::with_capacity(n);
    let mut c = 0i64;
    for _ in 0..n {
        let down = c - i64::from(s);
        let take_t = down >= 0 && elements.binary_search(&(down as u64)).is_err();
        if take_t {
            word.push(Letter::T);
            c = down;
        } else {
            word.push(Letter::S);
            c += i64::from(t);
        }
    }
    if c != 0 || word.s_count() != u64::from(s) || word.t_count() != u64::from(t) {
        return Err(Error::DownsetWalkFailed);
    }
    Ok(BallotWord::new_trusted(word, s, t))
}

/// The (s, t)-core whose first-column hooks are the downset of `b`.
pub fn word_to_partition(b: &BallotWord) -> Partition {
    partition_from_hookset_trusted(word_to_downset(b).elements())
}

/// Inverse of [`word_to_partition`]. The partition must actually be an
/// (s, t)-core; a forbidden hook is reported by value.
pub fn partition_to_word(p: &Partition, s: u32, t: u32) -> Result<BallotWord> {
    require_coprime(s, t)?;
    for q in [s, t] {
        if !is_p_core(p, u64::from(q)) {
            return Err(Error::HookFound { hook: u64::from(q) });
        }
    }
    let downset = Downset::new_trusted(first_column_hooks(p), s, t);
    downset_to_word(&downset)
}

/// Size of the core corresponding to a word with the given pattern sum
/// `c = #STST + #TSTS`: `(s^2 - 1)(t^2 - 1) / 24 - c / 2`.
///
/// `c` is rotation invariant, so callers may pass counts taken from any
/// rotation of a ballot word. Parity and range are asserted, not
/// truncated: a violation means the counts do not come from a word with
/// coprime letter counts `(s, t)`.
pub(crate) fn size_from_pattern_sum(s: u32, t: u32, c: u128) -> Result<u128> {
    let max = crate::partitions::max_core_size(s, t)?;
    assert_eq!(c % 2, 0, "stst + tsts must be even");
    let half = c / 2;
    assert!(half <= max, "pattern sum exceeds the maximal core size");
    Ok(max - half)
}

/// Number of boxes of the core of `b`, from pattern counts alone.
pub fn size_from_word(b: &BallotWord) -> Result<u128> {
    let pc = pattern_counts(b.word())?;
    size_from_pattern_sum(b.s(), b.t(), pc.stst_plus_tsts()?)
}

/// Both sides of the downset cardinality identity
/// `|A| = (s - 1)(t - 1) / 2 - #TS`: the predicted value from the pattern
/// count and the actual downset size.
pub fn downset_size_identity(b: &BallotWord) -> Result<(i128, u64)> {
    let PatternCounts { ts, .. } = pattern_counts(b.word())?;
    let genus = i128::from(b.s() - 1) * i128::from(b.t() - 1) / 2;
    let predicted = genus - ts as i128;
    let actual = word_to_downset(b).len() as u64;
    Ok((predicted, actual))
}
