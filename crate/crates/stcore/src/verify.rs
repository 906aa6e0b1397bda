//! Self-verification battery: exhaustive consistency checks over every
//! coprime pair up to a size budget.
//!
//! Each check either passes, fails with a concrete counterexample in the
//! detail string, or is skipped with the reason recorded. The battery is
//! what the command line `verify` subcommand runs.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::anderson::{
    downset_size_identity, downset_to_word, partition_to_word, size_from_word, word_to_downset,
    word_to_partition,
};
use crate::enumeration::{
    ballot_words, brute_force_cores, closed_form_mean, closed_form_variance,
    exact_size_distribution, exact_moments, rational_catalan,
};
use crate::error::Result;
use crate::partitions::{is_st_core, max_core_size, Partition};
use crate::watson::size_u2_bridge;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check on one pair.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub s: u32,
    pub t: u32,
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckReport {
    fn pass(s: u32, t: u32, name: &'static str) -> Self {
        CheckReport {
            s,
            t,
            name,
            status: CheckStatus::Pass,
            detail: String::new(),
        }
    }

    fn fail(s: u32, t: u32, name: &'static str, detail: String) -> Self {
        CheckReport {
            s,
            t,
            name,
            status: CheckStatus::Fail,
            detail,
        }
    }

    fn skip(s: u32, t: u32, name: &'static str, detail: String) -> Self {
        CheckReport {
            s,
            t,
            name,
            status: CheckStatus::Skipped,
            detail,
        }
    }
}

/// All coprime pairs with `s <= t` and `s + t <= max_sum`, ordered by sum
/// then by s.
pub fn coprime_pairs(max_sum: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for sum in 2..=max_sum {
        for s in 1..=sum / 2 {
            let t = sum - s;
            if s.gcd(&t) == 1 {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

/// Brute force is only attempted when the maximal core size stays at or
/// below this; beyond it the partition count explodes.
pub const BRUTE_MAX_SIZE: u128 = 100;

/// Run every check on every coprime pair with `s + t <= max_sum`,
/// reporting each outcome through `sink`. Returns true when nothing
/// failed (skips do not count as failures).
pub fn run_battery<F: FnMut(&CheckReport)>(max_sum: u32, sink: F) -> Result<bool> {
    run_battery_with_budget(max_sum, BRUTE_MAX_SIZE, sink)
}

/// Same battery with an explicit brute-force size budget.
pub fn run_battery_with_budget<F: FnMut(&CheckReport)>(
    max_sum: u32,
    brute_budget: u128,
    mut sink: F,
) -> Result<bool> {
    let mut all_pass = true;
    for (s, t) in coprime_pairs(max_sum) {
        for report in check_pair(s, t, brute_budget)? {
            if report.status == CheckStatus::Fail {
                all_pass = false;
            }
            sink(&report);
        }
    }
    Ok(all_pass)
}

fn check_pair(s: u32, t: u32, brute_budget: u128) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();

    // Enumerated word count against the rational Catalan number.
    let words: Vec<_> = ballot_words(s, t)?.collect();
    let catalan = rational_catalan(s, t)?;
    reports.push(if BigUint::from(words.len() as u64) == catalan {
        CheckReport::pass(s, t, "word_count")
    } else {
        CheckReport::fail(
            s,
            t,
            "word_count",
            format!("enumerated {} words, catalan {}", words.len(), catalan),
        )
    });

    // Size formula against actual box counts, and core-ness of images.
    let mut sizes_ok = true;
    for b in &words {
        let p = word_to_partition(b);
        let claimed = size_from_word(b)?;
        if claimed != p.size() || !is_st_core(&p, s, t) {
            sizes_ok = false;
            reports.push(CheckReport::fail(
                s,
                t,
                "size_formula",
                format!("word {b}: formula {claimed}, boxes {}", p.size()),
            ));
            break;
        }
    }
    if sizes_ok {
        reports.push(CheckReport::pass(s, t, "size_formula"));
    }

    // Word -> downset -> word and word -> partition -> word identities.
    let mut roundtrip_ok = true;
    for b in &words {
        let via_downset = downset_to_word(&word_to_downset(b))?;
        let via_partition = partition_to_word(&word_to_partition(b), s, t)?;
        if &via_downset != b || &via_partition != b {
            roundtrip_ok = false;
            reports.push(CheckReport::fail(
                s,
                t,
                "roundtrip",
                format!("word {b} did not survive the roundtrip"),
            ));
            break;
        }
    }
    if roundtrip_ok {
        reports.push(CheckReport::pass(s, t, "roundtrip"));
    }

    // Downset cardinality identity.
    let mut downset_ok = true;
    for b in &words {
        let (predicted, actual) = downset_size_identity(b)?;
        if predicted != i128::from(actual) {
            downset_ok = false;
            reports.push(CheckReport::fail(
                s,
                t,
                "downset_size",
                format!("word {b}: predicted {predicted}, actual {actual}"),
            ));
            break;
        }
    }
    if downset_ok {
        reports.push(CheckReport::pass(s, t, "downset_size"));
    }

    // Size to U² bridge, exact.
    let mut bridge_ok = true;
    for b in &words {
        let check = size_u2_bridge(b)?;
        if !check.residual.is_zero() {
            bridge_ok = false;
            reports.push(CheckReport::fail(
                s,
                t,
                "bridge",
                format!("word {b}: residual {}", check.residual),
            ));
            break;
        }
    }
    if bridge_ok {
        reports.push(CheckReport::pass(s, t, "bridge"));
    }

    // Bijection images against brute-forced cores, where affordable.
    let max = max_core_size(s, t)?;
    if max <= brute_budget {
        let mut images: Vec<Partition> = words.iter().map(word_to_partition).collect();
        images.sort_unstable_by(|a, b| (a.size(), a.rows()).cmp(&(b.size(), b.rows())));
        let brute = brute_force_cores(s, t)?;
        reports.push(if images == brute {
            CheckReport::pass(s, t, "brute_force")
        } else {
            CheckReport::fail(
                s,
                t,
                "brute_force",
                format!("bijection yields {} cores, brute force {}", images.len(), brute.len()),
            )
        });
    } else {
        reports.push(CheckReport::skip(
            s,
            t,
            "brute_force",
            format!("max core size {max} exceeds budget {brute_budget}"),
        ));
    }

    // Enumerated moments against the closed forms.
    let dist = exact_size_distribution(s, t)?;
    let moments = exact_moments(&dist, 2);
    let mean_ok = moments.mean == closed_form_mean(s, t)?;
    let var_ok = moments.variance == closed_form_variance(s, t)?;
    reports.push(if mean_ok && var_ok {
        CheckReport::pass(s, t, "moments")
    } else {
        CheckReport::fail(
            s,
            t,
            "moments",
            format!(
                "enumerated mean {} variance {}",
                moments.mean, moments.variance
            ),
        )
    });

    Ok(reports)
}
