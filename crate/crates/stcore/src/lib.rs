//! Simultaneous core partitions through the lens of lattice words.
//!
//! For coprime s and t, the (s, t)-cores (partitions avoiding hook
//! lengths s and t) are in bijection with ballot words of s S's and t T's
//! and with downsets of the gap poset of the numerical semigroup `<s, t>`.
//! This crate implements the three views and the traffic between them:
//!
//! - [`words`]: the word side. Prefix heights, the ballot predicate,
//!   exact subsequence pattern counting, and the cycle-lemma rotation
//!   that picks the unique ballot representative of a cyclic class.
//! - [`partitions`]: the partition side. Hook lengths, the p-core
//!   predicate, first-column hook sets, semigroup gaps, and downsets.
//! - [`anderson`]: the bijection itself, plus the size formula
//!   `(s^2 - 1)(t^2 - 1) / 24 - (#STST + #TSTS) / 2` that reads a core's
//!   size straight off its word.
//! - [`enumeration`]: exact counting (the rational Catalan number
//!   `C(s+t, s) / (s+t)`), lexicographic iteration, full size
//!   distributions with exact moments, and an independent brute force.
//! - [`sampling`]: seeded uniform sampling of cores; sizes can be drawn
//!   without performing the rotation at all, because the pattern sum is
//!   rotation invariant.
//! - [`watson`]: Watson's U² via Persson's formula, the exact identity
//!   bridging it to core sizes, and the limiting tail law
//!   `2 sum (-1)^(m-1) exp(-2 m^2 pi^2 x)` with quantiles and KS
//!   distances against it.
//! - [`verify`]: an exhaustive consistency battery over small pairs.
//!
//! Counting is exact everywhere: big integers for counts, big rationals
//! for moments and U² values, and checked fixed-width arithmetic that
//! reports overflow instead of wrapping.

pub mod anderson;
pub mod enumeration;
pub mod error;
pub mod partitions;
pub mod sampling;
pub mod verify;
pub mod watson;
pub mod words;

pub use anderson::{
    downset_size_identity, downset_to_word, partition_to_word, size_from_word, word_to_downset,
    word_to_partition,
};
pub use enumeration::{
    ballot_words, brute_force_cores, closed_form_mean, closed_form_variance,
    exact_moments, exact_size_distribution, rational_catalan, BallotWords, MomentSummary,
    SizeDistribution,
};
pub use error::{Error, Result};
pub use partitions::{
    first_column_hooks, hook_lengths, is_downset, is_p_core, is_st_core, max_core_size,
    partition_from_hookset, semigroup_gaps, size_from_hookset, Downset, Partition,
};
pub use sampling::{
    monte_carlo_normalized, normalizer, read_samples_binary, rng_from_seed, sample_core_partition,
    sample_core_size, sample_uniform_word, size_histogram, write_samples_binary,
    write_samples_csv, NormalizedSample, SampleConfig, SampleFile,
};
pub use verify::{
    coprime_pairs, run_battery, run_battery_with_budget, CheckReport, CheckStatus, BRUTE_MAX_SIZE,
};
pub use watson::{
    ks_against_limit, ks_distance, persson_u2, size_u2_bridge, u2_cdf, u2_tail, BridgeCheck,
    EcdfComparison, U2Limit,
};
pub use words::{
    count_subsequence, is_ballot, pattern_counts, prefix_heights, rotate_to_ballot, BallotWord,
    Letter, PatternCounts, Word,
};
