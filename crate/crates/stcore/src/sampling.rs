//! Uniform sampling of (s, t)-cores via random words and the cycle lemma.
//!
//! A uniformly random arrangement of s S's and t T's, rotated to its
//! unique ballot rotation, is a uniformly random core: rotation classes
//! all have exactly s + t members because the letter counts are coprime.
//! The pattern sum #STST + #TSTS is rotation invariant, so the size-only
//! sampler skips the rotation entirely and reads the size off the
//! unrotated word. [`sample_core_partition`] pays for the rotation;
//! [`sample_core_size`] does not. That asymmetry is the point.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::anderson::{size_from_pattern_sum, word_to_partition};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::words::{pattern_counts, rotate_to_ballot, require_coprime, Letter, Word};

/// Parameters of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub s: u32,
    pub t: u32,
    pub n: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(s: u32, t: u32, n: u64, seed: u64) -> Result<Self> {
        require_coprime(s, t)?;
        if n == 0 {
            return Err(Error::ZeroSamples);
        }
        Ok(SampleConfig { s, t, n, seed })
    }
}

/// The deterministic generator used throughout: fixed algorithm, fixed
/// seeding, so a seed pins every sample on every platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random word with exactly s S's and t T's.
pub fn sample_uniform_word<R: Rng>(rng: &mut R, s: u32, t: u32) -> Word {
    let mut s_left = u64::from(s);
    let mut t_left = u64::from(t);
    let mut w = Word::with_capacity((s_left + t_left) as usize);
    while s_left + t_left > 0 {
        if rng.random_range(0..s_left + t_left) < s_left {
            w.push(Letter::S);
            s_left -= 1;
        } else {
            w.push(Letter::T);
            t_left -= 1;
        }
    }
    w
}

/// Size of a uniformly random (s, t)-core, without constructing it.
///
/// The unrotated word already carries the rotation-invariant pattern sum,
/// so no ballot rotation is needed.
pub fn sample_core_size<R: Rng>(rng: &mut R, s: u32, t: u32) -> Result<u128> {
    require_coprime(s, t)?;
    let w = sample_uniform_word(rng, s, t);
    let c = pattern_counts(&w)?.stst_plus_tsts()?;
    size_from_pattern_sum(s, t, c)
}

/// A uniformly random (s, t)-core partition. Here the rotation is
/// mandatory: only the ballot representative maps to the core.
pub fn sample_core_partition<R: Rng>(rng: &mut R, s: u32, t: u32) -> Result<Partition> {
    require_coprime(s, t)?;
    let w = sample_uniform_word(rng, s, t);
    let (ballot, _) = rotate_to_ballot(&w, s, t)?;
    Ok(word_to_partition(&ballot))
}

/// `st(s + t) / 2`, the scale on which core sizes follow the Watson U²
/// limit law.
pub fn normalizer(s: u32, t: u32) -> f64 {
    let prod = u128::from(s) * u128::from(t) * (u128::from(s) + u128::from(t));
    // s, t not both even in any coprime pair, so the product is even.
    (prod / 2) as f64 + (prod % 2) as f64 / 2.0
}

/// One Monte Carlo draw: the raw size and the size divided by
/// `st(s + t) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedSample {
    pub raw_size: u128,
    pub normalized: f64,
}

/// Samples are generated in fixed blocks of this many draws, one RNG
/// stream per block, so the output depends only on the seed and not on
/// the number of worker threads.
const SHARD_SIZE: u64 = 4096;

/// Draw `cfg.n` core sizes and normalize them onto the U² scale.
///
/// Deterministic for a fixed config: shard i always uses stream i of the
/// seeded generator and always produces the same block of draws.
pub fn monte_carlo_normalized(cfg: &SampleConfig) -> Result<Vec<NormalizedSample>> {
    let norm = normalizer(cfg.s, cfg.t);
    let shards = cfg.n.div_ceil(SHARD_SIZE);
    let blocks: Vec<Vec<NormalizedSample>> = (0..shards)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(cfg.seed);
            rng.set_stream(i);
            let count = SHARD_SIZE.min(cfg.n - i * SHARD_SIZE);
            let mut block = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let raw = sample_core_size(&mut rng, cfg.s, cfg.t)?;
                block.push(NormalizedSample {
                    raw_size: raw,
                    normalized: raw as f64 / norm,
                });
            }
            Ok(block)
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// `index,raw_size,normalized` rows with a header line.
pub fn write_samples_csv<W: Write>(out: &mut W, samples: &[NormalizedSample]) -> Result<()> {
    writeln!(out, "index,raw_size,normalized")?;
    for (i, sample) in samples.iter().enumerate() {
        writeln!(out, "{i},{},{}", sample.raw_size, sample.normalized)?;
    }
    Ok(())
}

const MAGIC: &[u8; 4] = b"CORE";
const FORMAT_VERSION: u16 = 1;

/// Contents of a binary sample stream: the pair it was drawn for and the
/// raw sizes in draw order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleFile {
    pub s: u32,
    pub t: u32,
    pub sizes: Vec<u64>,
}

/// Binary sample stream: a 16-byte header (magic `CORE`, format version,
/// s, t as u16, sample count as u32, reserved u16, all little endian)
/// followed by one u64 raw size per draw.
pub fn write_samples_binary<W: Write>(
    out: &mut W,
    s: u32,
    t: u32,
    sizes: &[u128],
) -> Result<()> {
    let s16 = u16::try_from(s).map_err(|_| Error::BinaryRange("s exceeds u16"))?;
    let t16 = u16::try_from(t).map_err(|_| Error::BinaryRange("t exceeds u16"))?;
    let n = u32::try_from(sizes.len()).map_err(|_| Error::BinaryRange("sample count exceeds u32"))?;
    out.write_all(MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&s16.to_le_bytes())?;
    out.write_all(&t16.to_le_bytes())?;
    out.write_all(&n.to_le_bytes())?;
    out.write_all(&0u16.to_le_bytes())?;
    for &size in sizes {
        // u16-bounded s and t keep every core size far below u64::MAX.
        let size = u64::try_from(size).map_err(|_| Error::BinaryRange("size exceeds u64"))?;
        out.write_all(&size.to_le_bytes())?;
    }
    Ok(())
}

/// Read back a stream produced by [`write_samples_binary`]. Trailing
/// bytes after the declared sample count are rejected.
pub fn read_samples_binary<R: Read>(input: &mut R) -> Result<SampleFile> {
    let mut header = [0u8; 16];
    input.read_exact(&mut header)?;
    if &header[0..4] != MAGIC {
        return Err(Error::BinaryFormat("bad magic"));
    }
    let version = u16::from_le_bytes([header[4], header[5]]);
    if version != FORMAT_VERSION {
        return Err(Error::BinaryFormat("unsupported version"));
    }
    let s = u16::from_le_bytes([header[6], header[7]]);
    let t = u16::from_le_bytes([header[8], header[9]]);
    let n = u32::from_le_bytes([header[10], header[11], header[12], header[13]]);
    let mut sizes = Vec::with_capacity(n as usize);
    let mut buf = [0u8; 8];
    for _ in 0..n {
        input.read_exact(&mut buf)?;
        sizes.push(u64::from_le_bytes(buf));
    }
    if input.read(&mut buf[..1])? != 0 {
        return Err(Error::BinaryFormat("trailing data"));
    }
    Ok(SampleFile {
        s: u32::from(s),
        t: u32::from(t),
        sizes,
    })
}

/// Tally raw sizes into a histogram; used by the statistical tests and
/// the verification battery.
pub fn size_histogram(samples: &[NormalizedSample]) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for sample in samples {
        *hist.entry(sample.raw_size as u64).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::exact_size_distribution;
    use crate::partitions::{is_st_core, max_core_size};
    use num_traits::ToPrimitive;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn config_validation() {
        assert!(SampleConfig::new(7, 10, 5, 0).is_ok());
        assert!(matches!(
            SampleConfig::new(4, 6, 5, 0),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            SampleConfig::new(7, 10, 0, 0),
            Err(Error::ZeroSamples)
        ));
    }

    #[test]
    fn uniform_word_has_exact_counts() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let w = sample_uniform_word(&mut rng, 7, 10);
            assert_eq!(w.s_count(), 7);
            assert_eq!(w.t_count(), 10);
        }
    }

    #[test]
    fn sizes_stay_in_range() {
        let mut rng = rng_from_seed(11);
        let max = max_core_size(12, 25).unwrap();
        for _ in 0..200 {
            assert!(sample_core_size(&mut rng, 12, 25).unwrap() <= max);
        }
    }

    #[test]
    fn size_sampler_agrees_with_partition_sampler() {
        // Same stream, so both see the same words; the unrotated size must
        // equal the size of the rotated core.
        let mut size_rng = rng_from_seed(42);
        let mut part_rng = rng_from_seed(42);
        for _ in 0..200 {
            let raw = sample_core_size(&mut size_rng, 7, 10).unwrap();
            let p = sample_core_partition(&mut part_rng, 7, 10).unwrap();
            assert_eq!(p.size(), raw);
            assert!(is_st_core(&p, 7, 10));
        }
    }

    #[test]
    fn normalizer_values() {
        assert_eq!(normalizer(2, 3), 15.0);
        assert_eq!(normalizer(7, 10), 595.0);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let cfg = SampleConfig::new(7, 10, 10_000, 99).unwrap();
        let a = monte_carlo_normalized(&cfg).unwrap();
        let b = monte_carlo_normalized(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10_000);
    }

    #[test]
    fn monte_carlo_matches_sequential_shard_layout() {
        // The parallel run must equal the hand-rolled sequential walk of
        // the shard layout; this is what makes results independent of the
        // thread count.
        let cfg = SampleConfig::new(7, 10, 9_000, 5).unwrap();
        let parallel = monte_carlo_normalized(&cfg).unwrap();
        let mut sequential = Vec::new();
        let mut produced = 0u64;
        let mut shard = 0u64;
        while produced < cfg.n {
            let mut rng = rng_from_seed(cfg.seed);
            rng.set_stream(shard);
            let count = 4096.min(cfg.n - produced);
            for _ in 0..count {
                let raw = sample_core_size(&mut rng, cfg.s, cfg.t).unwrap();
                sequential.push(raw);
            }
            produced += count;
            shard += 1;
        }
        assert_eq!(
            parallel.iter().map(|x| x.raw_size).collect::<Vec<_>>(),
            sequential
        );
    }

    #[test]
    fn different_seeds_differ() {
        let a = monte_carlo_normalized(&SampleConfig::new(7, 10, 100, 1).unwrap()).unwrap();
        let b = monte_carlo_normalized(&SampleConfig::new(7, 10, 100, 2).unwrap()).unwrap();
        assert_ne!(a, b);
    }

    /// Chi-square of observed size counts against the exact distribution,
    /// rejected only at significance 1e-6.
    fn assert_chi_square_fits(s: u32, t: u32, n: u64, seed: u64) {
        let exact = exact_size_distribution(s, t).unwrap();
        let total = exact.total().to_f64().unwrap();
        let cfg = SampleConfig::new(s, t, n, seed).unwrap();
        let samples = monte_carlo_normalized(&cfg).unwrap();
        let observed = size_histogram(&samples);
        for size in observed.keys() {
            assert!(exact.counts().contains_key(size), "impossible size {size}");
        }
        let mut chi2 = 0.0;
        for (size, count) in exact.counts() {
            let expected = count.to_f64().unwrap() / total * n as f64;
            assert!(expected >= 5.0, "cell {size} too thin for the test");
            let obs = *observed.get(size).unwrap_or(&0) as f64;
            chi2 += (obs - expected).powi(2) / expected;
        }
        let df = (exact.counts().len() - 1) as f64;
        let crit = ChiSquared::new(df).unwrap().inverse_cdf(1.0 - 1e-6);
        assert!(
            chi2 < crit,
            "chi2 {chi2:.2} over critical {crit:.2} at df {df}"
        );
    }

    #[test]
    fn chi_square_2_3() {
        assert_chi_square_fits(2, 3, 4_000, 12);
    }

    #[test]
    fn chi_square_3_4() {
        assert_chi_square_fits(3, 4, 6_000, 13);
    }

    #[test]
    fn chi_square_7_10() {
        assert_chi_square_fits(7, 10, 40_000, 14);
    }

    #[test]
    fn partition_sampler_chi_square_3_4() {
        // The partition route must induce the same size distribution as
        // the exact enumeration.
        let exact = exact_size_distribution(3, 4).unwrap();
        let n = 5_000u64;
        let mut rng = rng_from_seed(21);
        let mut observed: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..n {
            let p = sample_core_partition(&mut rng, 3, 4).unwrap();
            *observed.entry(p.size() as u64).or_insert(0) += 1;
        }
        let total = exact.total().to_f64().unwrap();
        let mut chi2 = 0.0;
        for (size, count) in exact.counts() {
            let expected = count.to_f64().unwrap() / total * n as f64;
            let obs = *observed.get(size).unwrap_or(&0) as f64;
            chi2 += (obs - expected).powi(2) / expected;
        }
        let df = (exact.counts().len() - 1) as f64;
        let crit = ChiSquared::new(df).unwrap().inverse_cdf(1.0 - 1e-6);
        assert!(chi2 < crit, "chi2 {chi2:.2} over critical {crit:.2}");
    }

    #[test]
    fn csv_format() {
        let samples = vec![
            NormalizedSample {
                raw_size: 23,
                normalized: 23.0 / 595.0,
            },
            NormalizedSample {
                raw_size: 0,
                normalized: 0.0,
            },
        ];
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &samples).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "index,raw_size,normalized");
        assert_eq!(lines[1], format!("0,23,{}", 23.0 / 595.0));
        assert_eq!(lines[2], "1,0,0");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn binary_roundtrip() {
        let sizes: Vec<u128> = vec![0, 23, 198, 7];
        let mut buf = Vec::new();
        write_samples_binary(&mut buf, 7, 10, &sizes).unwrap();
        assert_eq!(buf.len(), 16 + 8 * sizes.len());
        assert_eq!(&buf[0..4], b"CORE");
        let file = read_samples_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(file.s, 7);
        assert_eq!(file.t, 10);
        assert_eq!(file.sizes, vec![0, 23, 198, 7]);
    }

    #[test]
    fn binary_header_layout() {
        let mut buf = Vec::new();
        write_samples_binary(&mut buf, 258, 515, &[1]).unwrap();
        // magic, version 1, s 258, t 515, n 1, reserved 0
        assert_eq!(
            buf[..16],
            [
                b'C', b'O', b'R', b'E', 1, 0, 2, 1, 3, 2, 1, 0, 0, 0, 0, 0
            ]
        );
    }

    #[test]
    fn binary_rejects_garbage() {
        let mut buf = Vec::new();
        write_samples_binary(&mut buf, 7, 10, &[1, 2]).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(
            read_samples_binary(&mut bad.as_slice()),
            Err(Error::BinaryFormat("bad magic"))
        ));
        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(matches!(
            read_samples_binary(&mut bad.as_slice()),
            Err(Error::BinaryFormat("unsupported version"))
        ));
        let mut truncated = buf.clone();
        truncated.pop();
        assert!(read_samples_binary(&mut truncated.as_slice()).is_err());
        let mut extended = buf;
        extended.push(0);
        assert!(matches!(
            read_samples_binary(&mut extended.as_slice()),
            Err(Error::BinaryFormat("trailing data"))
        ));
    }

    #[test]
    fn binary_range_checks() {
        let mut buf = Vec::new();
        assert!(matches!(
            write_samples_binary(&mut buf, 70_000, 3, &[]),
            Err(Error::BinaryRange("s exceeds u16"))
        ));
        assert!(matches!(
            write_samples_binary(&mut buf, 3, 70_000, &[]),
            Err(Error::BinaryRange("t exceeds u16"))
        ));
        assert!(matches!(
            write_samples_binary(&mut buf, 3, 4, &[u128::from(u64::MAX) + 1]),
            Err(Error::BinaryRange("size exceeds u64"))
        ));
    }
}
