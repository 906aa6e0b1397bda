//! Watson's U² statistic and its limit distribution.
//!
//! Persson's formula evaluates U² of a two-letter word exactly from the
//! pattern sum `#STST + #TSTS`; normalized core sizes converge in
//! distribution to the classical limit law with tail
//! `2 sum_{m>=1} (-1)^{m-1} exp(-2 m^2 pi^2 x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::anderson::size_from_word;
use crate::error::{Error, Result};
use crate::words::{pattern_counts, BallotWord, Word};

/// Evaluator for the limiting tail law of U².
///
/// The series alternates with strictly decreasing terms, so the absolute
/// error of a truncation is below the first omitted term; summation stops
/// once that bound drops under `tol`.
#[derive(Debug, Clone, Copy)]
pub struct U2Limit {
    tol: f64,
}

/// Hard cap on series length; reached only for x below about 1e-10,
/// where the omitted remainder is still far below 1e-8.
const MAX_TERMS: u32 = 100_000;

impl U2Limit {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol <= 1e-6) {
            return Err(Error::BadTolerance);
        }
        Ok(U2Limit { tol })
    }

    /// `P(U^2 > x)` in the limit.
    pub fn tail(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        let mut sum = 0.0;
        let mut sign = 1.0;
        for m in 1..=MAX_TERMS {
            // The first term is always taken; stopping is decided on the
            // size of the next one, so tiny tails come out as tiny
            // numbers instead of a hard zero.
            let term = 2.0 * (-2.0 * (m as f64).powi(2) * std::f64::consts::PI.powi(2) * x).exp();
            sum += sign * term;
            sign = -sign;
            let next = 2.0
                * (-2.0 * ((m + 1) as f64).powi(2) * std::f64::consts::PI.powi(2) * x).exp();
            if next < self.tol {
                break;
            }
        }
        sum.clamp(0.0, 1.0)
    }

    /// `P(U^2 <= x)` in the limit.
    pub fn cdf(&self, x: f64) -> f64 {
        1.0 - self.tail(x)
    }

    /// Quantile by bisection; defined for `p` in `[0, 1)`.
    pub fn inverse_cdf(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) || p.is_nan() {
            return Err(Error::BadProbability);
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        let mut hi = 1.0f64;
        while self.cdf(hi) <= p {
            hi *= 2.0;
            assert!(hi.is_finite());
        }
        let mut lo = 0.0f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl Default for U2Limit {
    fn default() -> Self {
        U2Limit { tol: 1e-12 }
    }
}

/// Tail of the limit law at default tolerance.
pub fn u2_tail(x: f64) -> f64 {
    U2Limit::default().tail(x)
}

/// Distribution function of the limit law at default tolerance.
pub fn u2_cdf(x: f64) -> f64 {
    U2Limit::default().cdf(x)
}

/// Watson's U² of a word with a S's and b T's, exactly, via Persson's
/// formula: `ab(a + b) / 2 * U² = ab(ab + 2) / 24 - (#STST + #TSTS) / 2`.
///
/// Rotation invariant, because the pattern sum is. Requires both letters
/// to occur; no coprimality or ballot condition is needed.
pub fn persson_u2(w: &Word) -> Result<BigRational> {
    let a = BigInt::from(w.s_count());
    let b = BigInt::from(w.t_count());
    if a.is_zero() || b.is_zero() {
        return Err(Error::MissingLetter);
    }
    let c = BigInt::from(pattern_counts(w)?.stst_plus_tsts()?);
    let ab = &a * &b;
    // (ab(ab + 2) / 24 - c / 2) * 2 / (ab(a + b))
    let num = &ab * (&ab + 2) - 12 * c;
    let den = 12 * ab * (a + b);
    Ok(BigRational::new(num, den))
}

/// The exact relation tying a core's size to its word's U².
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeCheck {
    pub size: u128,
    pub u2: BigRational,
    /// `size - (st(s+t)/2 * u2 - ((s+t)^2 - 1) / 24)`; zero whenever the
    /// formulas are consistent.
    pub residual: BigRational,
}

/// Evaluate both the size formula and Persson's formula on one ballot
/// word and report the residual of the exact identity linking them.
pub fn size_u2_bridge(b: &BallotWord) -> Result<BridgeCheck> {
    let size = size_from_word(b)?;
    let u2 = persson_u2(b.word())?;
    let s = BigInt::from(b.s());
    let t = BigInt::from(b.t());
    let n = &s + &t;
    let scale = BigRational::new(&s * &t * &n, BigInt::from(2));
    let shift = BigRational::new(&n * &n - 1, BigInt::from(24));
    let predicted = scale * &u2 - shift;
    let residual = BigRational::from(BigInt::from(size)) - predicted;
    Ok(BridgeCheck { size, u2, residual })
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and a reference distribution function.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        // Both one-sided gaps: ecdf jumps from i/n to (i+1)/n at x.
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d)
}

/// Result of comparing an empirical sample against the U² limit law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcdfComparison {
    pub ks_distance: f64,
    pub sample_size: usize,
}

/// KS distance of normalized samples against the limiting U² law.
pub fn ks_against_limit(samples: &[f64], law: &U2Limit) -> Result<EcdfComparison> {
    Ok(EcdfComparison {
        ks_distance: ks_distance(samples, |x| law.cdf(x))?,
        sample_size: samples.len(),
    })
}
