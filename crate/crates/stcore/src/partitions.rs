//! Integer partitions, hook lengths, the p-core predicate, and downsets of
//! the numerical semigroup generated by s and t.
//!
//! First-column hook lengths are the bridge between the two worlds: a
//! partition with rows `r_0 >= r_1 >= ... >= r_{k-1} > 0` has first-column
//! hooks `r_i + (k - 1 - i)`, and these determine the partition. Downsets
//! live inside the gap set of the semigroup `<s, t>`, whose largest element
//! is the Frobenius number `s*t - s - t`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::require_coprime;

/// An integer partition, rows weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    rows: Vec<u64>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    pub fn new(rows: Vec<u64>) -> Result<Self> {
        let ok = rows.windows(2).all(|p| p[0] >= p[1]) && rows.last().is_none_or(|&r| r > 0);
        if !ok {
            return Err(Error::MalformedPartition);
        }
        Ok(Partition { rows })
    }

    /// Skip validation; caller guarantees weakly decreasing positive rows.
    pub(crate) fn new_trusted(rows: Vec<u64>) -> Self {
        debug_assert!(rows.windows(2).all(|p| p[0] >= p[1]));
        debug_assert!(rows.last().is_none_or(|&r| r > 0));
        Partition { rows }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Number of boxes.
    pub fn size(&self) -> u128 {
        self.rows.iter().map(|&r| u128::from(r)).sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
}

impl fmt::Display for Partition {
    /// Space-separated row lengths; the empty partition prints as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in &self.rows {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for tok in input.split_whitespace() {
            let r: u64 = tok.parse().map_err(|_| Error::BadRow {
                text: tok.to_string(),
            })?;
            rows.push(r);
        }
        Partition::new(rows)
    }
}

/// Hook lengths of every box, row by row.
///
/// The hook of box `(i, j)` counts the box itself, the boxes to its right,
/// and the boxes below it in its column.
pub fn hook_lengths(p: &Partition) -> Vec<Vec<u64>> {
    let rows = p.rows();
    let k = rows.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(rows[i] as usize);
        for j in 0..rows[i] {
            // Rows are sorted, so the column height below (i, j) is the
            // count of later rows with length > j.
            let below = rows[i + 1..].iter().take_while(|&&r| r > j).count() as u64;
            row.push(rows[i] - j + below);
        }
        out.push(row);
    }
    out
}

/// First-column hook lengths, ascending.
pub fn first_column_hooks(p: &Partition) -> Vec<u64> {
    let k = p.num_rows() as u64;
    let mut hooks: Vec<u64> = p
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| r + k - 1 - i as u64)
        .collect();
    hooks.reverse();
    hooks
}

/// Does `p` avoid the hook length `q`?
///
/// Works directly on the hook geometry rather than via first-column hooks,
/// so it can serve as an independent check against the downset view. Hooks
/// decrease strictly along each row, and the box whose hook could equal
/// `q` is found by binary search; overall cost is `O(k log width + k)`.
pub fn is_p_core(p: &Partition, q: u64) -> bool {
    is_p_core_rows(p.rows(), q)
}

/// Same check on a raw descending row slice, for enumeration loops that
/// reuse a buffer instead of allocating partitions.
pub(crate) fn is_p_core_rows(rows: &[u64], q: u64) -> bool {
    if q == 0 {
        // Every box has hook >= 1; a 0-core is any partition.
        return true;
    }
    let k = rows.len();
    // colh[j] = number of rows longer than j, computed incrementally.
    // First-column hooks rows[i] + (k-1-i) decrease strictly with i, so
    // once the first-column hook drops below q no later row can hold q.
    for i in 0..k {
        let first_hook = rows[i] + (k - 1 - i) as u64;
        if first_hook < q {
            break;
        }
        // Hook at (i, j) is rows[i] - j + below(i, j); strictly decreasing
        // in j, from first_hook at j=0 down to 1 at the row end.
        let (mut lo, mut hi) = (0u64, rows[i] - 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let below = rows[i + 1..].iter().filter(|&&r| r > mid).count() as u64;
            let hook = rows[i] - mid + below;
            if hook >= q {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        // lo is the first j with hook < q, or rows[i]-1; check neighbor.
        for j in [lo.saturating_sub(1), lo] {
            let below = rows[i + 1..].iter().filter(|&&r| r > j).count() as u64;
            if rows[i] - j + below == q {
                return false;
            }
        }
    }
    true
}

/// Is `p` simultaneously an s-core and a t-core?
pub fn is_st_core(p: &Partition, s: u32, t: u32) -> bool {
    is_p_core(p, u64::from(s)) && is_p_core(p, u64::from(t))
}

/// Rebuild a partition from a set of first-column hook lengths.
///
/// The set must consist of distinct positive integers; row lengths are
/// recovered as `a_i - (k - 1 - i)` after sorting descending.
pub fn partition_from_hookset(hooks: &[u64]) -> Result<Partition> {
    let mut sorted = hooks.to_vec();
    sorted.sort_unstable();
    let distinct_positive =
        sorted.first().is_none_or(|&a| a > 0) && sorted.windows(2).all(|p| p[0] < p[1]);
    if !distinct_positive {
        return Err(Error::InvalidHookSet);
    }
    Ok(partition_from_hookset_trusted(&sorted))
}

/// `hooks` must be sorted ascending, distinct, positive.
pub(crate) fn partition_from_hookset_trusted(hooks: &[u64]) -> Partition {
    let k = hooks.len() as u64;
    // hooks[j] >= j + 1 because they are distinct positive ascending, so
    // the subtraction below cannot underflow.
    let rows: Vec<u64> = hooks
        .iter()
        .enumerate()
        .rev()
        .map(|(j, &a)| a - j as u64)
        .collect();
    debug_assert!(rows.iter().all(|&r| r > 0) || k == 0);
    Partition::new_trusted(rows)
}

/// Total box count of the partition with the given first-column hooks,
/// without building it: `sum(a) - C(k, 2)`.
pub fn size_from_hookset(hooks: &[u64]) -> u128 {
    let k = hooks.len() as u128;
    let total: u128 = hooks.iter().map(|&a| u128::from(a)).sum();
    total - k * k.saturating_sub(1) / 2
}

/// Membership sieve for the numerical semigroup `<s, t>` on `0..=limit`.
fn semigroup_sieve(s: u32, t: u32, limit: u64) -> Vec<bool> {
    let n = (limit + 1) as usize;
    let mut in_semi = vec![false; n];
    in_semi[0] = true;
    for a in 1..n {
        let from_s = a >= s as usize && in_semi[a - s as usize];
        let from_t = a >= t as usize && in_semi[a - t as usize];
        in_semi[a] = from_s || from_t;
    }
    in_semi
}

/// Gaps of `<s, t>`: positive integers not representable as `x*s + y*t`.
/// Ascending; the largest is the Frobenius number `s*t - s - t`.
pub fn semigroup_gaps(s: u32, t: u32) -> Result<Vec<u64>> {
    require_coprime(s, t)?;
    if s == 1 || t == 1 {
        return Ok(Vec::new());
    }
    let frob = u64::from(s) * u64::from(t) - u64::from(s) - u64::from(t);
    let sieve = semigroup_sieve(s, t, frob);
    Ok((1..=frob).filter(|&a| !sieve[a as usize]).collect())
}

/// A downset of the gap poset of `<s, t>`: a gap set closed under
/// subtracting s and t (whenever the difference is still positive, it must
/// again be in the set).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Downset {
    elements: Vec<u64>,
    s: u32,
    t: u32,
}

impl Downset {
    pub fn new(elements: Vec<u64>, s: u32, t: u32) -> Result<Self> {
        require_coprime(s, t)?;
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if !is_downset(&elements, s, t) {
            return Err(Error::NotDownset { s, t });
        }
        Ok(Downset { elements, s, t })
    }

    /// `elements` must be sorted, distinct, and downset-closed.
    pub(crate) fn new_trusted(elements: Vec<u64>, s: u32, t: u32) -> Self {
        debug_assert!(elements.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(is_downset(&elements, s, t));
        Downset { elements, s, t }
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl fmt::Display for Downset {
    /// Comma-separated ascending elements; empty set prints as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.elements {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Downset check on a sorted, deduplicated slice.
///
/// Closure under subtracting s or t forces every element to be a gap of
/// `<s, t>` (an element of the semigroup would walk down to 0, or to an
/// exact multiple, both rejected), so no separate gap test is needed.
pub fn is_downset(sorted: &[u64], s: u32, t: u32) -> bool {
    let (s, t) = (u64::from(s), u64::from(t));
    for &a in sorted {
        if a == 0 {
            return false;
        }
        for d in [s, t] {
            if a > d && sorted.binary_search(&(a - d)).is_err() {
                return false;
            }
            if a == d {
                return false;
            }
        }
    }
    true
}

/// `(s^2 - 1)(t^2 - 1) / 24`, the exact maximum size of an (s, t)-core.
pub fn max_core_size(s: u32, t: u32) -> Result<u128> {
    require_coprime(s, t)?;
    let a = u128::from(s) * u128::from(s) - 1;
    let b = u128::from(t) * u128::from(t) - 1;
    let prod = a.checked_mul(b).ok_or(Error::Overflow {
        context: "max core size",
    })?;
    // For coprime s, t one of s, t is odd and (s^2-1)(t^2-1) is divisible
    // by 24; a remainder means the inputs were rejected incorrectly.
    assert_eq!(prod % 24, 0);
    Ok(prod / 24)
}
