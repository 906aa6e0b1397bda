//! Randomized invariants tying the modules together: whatever the inputs,
//! the identities the crate is built on must hold exactly.

use proptest::prelude::*;

use stcore::{
    count_subsequence, is_ballot, is_p_core, is_st_core, partition_to_word, pattern_counts,
    persson_u2, prefix_heights, read_samples_binary, rotate_to_ballot, sample_uniform_word,
    size_from_word, size_u2_bridge, word_to_partition, write_samples_binary, BallotWord,
    Letter, Partition, Word,
};

fn word_from_bools(bits: &[bool]) -> Word {
    Word::from_letters(
        bits.iter()
            .map(|&b| if b { Letter::T } else { Letter::S }),
    )
}

/// A random ballot word for a random small coprime pair, driven by a seed.
fn random_ballot(s: u32, t: u32, seed: u64) -> BallotWord {
    let mut rng = stcore::rng_from_seed(seed);
    let w = sample_uniform_word(&mut rng, s, t);
    rotate_to_ballot(&w, s, t).unwrap().0
}

proptest! {
    #[test]
    fn pattern_sum_is_rotation_invariant(bits in prop::collection::vec(any::<bool>(), 1..200), k in 0usize..200) {
        let w = word_from_bools(&bits);
        let base = pattern_counts(&w).unwrap();
        let rot = pattern_counts(&w.rotated_left(k)).unwrap();
        prop_assert_eq!(base.stst + base.tsts, rot.stst + rot.tsts);
    }

    #[test]
    fn st_plus_ts_counts_all_mixed_pairs(bits in prop::collection::vec(any::<bool>(), 0..200)) {
        let w = word_from_bools(&bits);
        let pc = pattern_counts(&w).unwrap();
        prop_assert_eq!(pc.st + pc.ts, u128::from(w.s_count()) * u128::from(w.t_count()));
    }

    #[test]
    fn single_pass_matches_dp(bits in prop::collection::vec(any::<bool>(), 0..120)) {
        let w = word_from_bools(&bits);
        let pc = pattern_counts(&w).unwrap();
        for (pat, expect) in [("ST", pc.st), ("TS", pc.ts), ("STST", pc.stst), ("TSTS", pc.tsts)] {
            let pat: Word = pat.parse().unwrap();
            prop_assert_eq!(count_subsequence(&w, &pat).unwrap(), expect);
        }
    }

    #[test]
    fn cycle_lemma_on_random_words((s, t) in (1u32..=12, 1u32..=12), seed in any::<u64>()) {
        prop_assume!(num_integer::gcd(s, t) == 1);
        let mut rng = stcore::rng_from_seed(seed);
        let w = sample_uniform_word(&mut rng, s, t);
        let (ballot, k) = rotate_to_ballot(&w, s, t).unwrap();
        prop_assert!(is_ballot(ballot.word(), s, t).unwrap());
        prop_assert_eq!(ballot.word(), &w.rotated_left(k));
        // Uniqueness: no other rotation is ballot.
        let n = (s + t) as usize;
        let ballots = (0..n)
            .filter(|&j| is_ballot(&w.rotated_left(j), s, t).unwrap())
            .count();
        prop_assert_eq!(ballots, 1);
    }

    #[test]
    fn bijection_roundtrip_random((s, t) in (1u32..=12, 1u32..=12), seed in any::<u64>()) {
        prop_assume!(num_integer::gcd(s, t) == 1);
        let b = random_ballot(s, t, seed);
        let p = word_to_partition(&b);
        prop_assert!(is_st_core(&p, s, t));
        prop_assert_eq!(size_from_word(&b).unwrap(), p.size());
        prop_assert_eq!(partition_to_word(&p, s, t).unwrap(), b);
    }

    #[test]
    fn bridge_residual_is_zero_random((s, t) in (1u32..=12, 1u32..=12), seed in any::<u64>()) {
        prop_assume!(num_integer::gcd(s, t) == 1);
        let b = random_ballot(s, t, seed);
        let check = size_u2_bridge(&b).unwrap();
        prop_assert!(num_traits::Zero::is_zero(&check.residual));
    }

    #[test]
    fn persson_rotation_invariant_random(bits in prop::collection::vec(any::<bool>(), 2..150), k in 1usize..150) {
        let w = word_from_bools(&bits);
        prop_assume!(w.s_count() > 0 && w.t_count() > 0);
        prop_assert_eq!(persson_u2(&w).unwrap(), persson_u2(&w.rotated_left(k)).unwrap());
    }

    #[test]
    fn heights_close_only_on_balanced_words(bits in prop::collection::vec(any::<bool>(), 1..100)) {
        let w = word_from_bools(&bits);
        let (s, t) = (w.s_count(), w.t_count());
        prop_assume!(s > 0 && t > 0 && s <= u64::from(u32::MAX) && t <= u64::from(u32::MAX));
        let h = prefix_heights(&w, s as u32, t as u32);
        prop_assert_eq!(h.len(), w.len() + 1);
        prop_assert_eq!(*h.last().unwrap(), 0);
    }

    #[test]
    fn core_predicate_matches_full_hook_scan(rows in prop::collection::vec(1u64..30, 0..12), q in 0u64..40) {
        let mut rows = rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(rows).unwrap();
        let naive = stcore::hook_lengths(&p).iter().flatten().all(|&h| h != q);
        prop_assert_eq!(is_p_core(&p, q), naive);
    }

    #[test]
    fn binary_roundtrip_random(sizes in prop::collection::vec(any::<u64>(), 0..300), s in 1u32..=500, t in 1u32..=500) {
        let wide: Vec<u128> = sizes.iter().map(|&x| u128::from(x)).collect();
        let mut buf = Vec::new();
        write_samples_binary(&mut buf, s, t, &wide).unwrap();
        let file = read_samples_binary(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(file.s, s);
        prop_assert_eq!(file.t, t);
        prop_assert_eq!(file.sizes, sizes);
    }
}
