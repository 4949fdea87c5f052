//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line with its measured values (visible with --nocapture).
//!
//! Run with:
//!
//! ```text
//! cargo test -p henonseq-cli --test acceptance -- --nocapture
//! ```
//!
//! Oracles used here (the exhaustive shortest-LFSR search, total
//! variation, reference laws evaluated directly) are implemented in this
//! file, independent of the library paths they check.

use henonseq::bitgen::{generate, GeneratorConfig};
use henonseq::bits::BitSequence;
use henonseq::corr::{correlation_pmf_exact, correlation_pmf_normal};
use henonseq::experiments::{autocorr_trace, corr_experiment, lc_experiment, mix_x0};
use henonseq::keyspace::{keyspace_bits, KeyspaceSpec, EPSILON_32, EPSILON_64};
use henonseq::lincomp::{conjectured_pmf, lc_profile, linear_complexity};
use henonseq::map::MapParameters;
use henonseq::presets;
use henonseq::stattests::fips140_1;
use henonseq::{cipher, stattests};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::process::Command;

/// Exhaustive shortest-LFSR search: the length of the shortest register
/// whose output, seeded with the sequence prefix, extends to the whole
/// sequence. Independent of the Berlekamp-Massey implementation.
fn brute_force_lc(bits: &[bool]) -> usize {
    let n = bits.len();
    if bits.iter().all(|&b| !b) {
        return 0;
    }
    for l in 1..=n {
        'taps: for taps in 0u64..(1 << l) {
            for j in l..n {
                let mut s = false;
                for i in 1..=l {
                    if (taps >> (i - 1)) & 1 == 1 && bits[j - i] {
                        s = !s;
                    }
                }
                if s != bits[j] {
                    continue 'taps;
                }
            }
            return l;
        }
    }
    n
}

/// Total variation distance between an empirical histogram and a
/// reference pmf, both indexed by integer bins over `bins`.
fn total_variation(freq: impl Fn(usize) -> f64, prob: impl Fn(usize) -> f64, bins: std::ops::RangeInclusive<usize>) -> f64 {
    0.5 * bins.map(|c| (freq(c) - prob(c)).abs()).sum::<f64>()
}

#[test]
fn criterion_01_bma_matches_brute_force_oracle() {
    let start = std::time::Instant::now();
    // every sequence of length 1..=10
    for n in 1..=10usize {
        for pattern in 0u32..(1 << n) {
            let bits: Vec<bool> = (0..n).map(|i| (pattern >> i) & 1 == 1).collect();
            let w: BitSequence = bits.iter().copied().collect();
            assert_eq!(
                linear_complexity(&w),
                brute_force_lc(&bits),
                "length {n}, pattern {pattern:#b}"
            );
        }
    }
    // 500 random sequences of length 11..=12
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let n = rng.random_range(11..=12usize);
        let bits: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let w: BitSequence = bits.iter().copied().collect();
        assert_eq!(linear_complexity(&w), brute_force_lc(&bits));
    }
    println!(
        "criterion 01 PASS: BMA equals exhaustive LFSR search on 2046 short + 500 random sequences ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_02_lc_distribution_even_length() {
    let start = std::time::Instant::now();
    let r = lc_experiment(&GeneratorConfig::default(), 64, 2000).unwrap();
    assert!(
        (32.0..=32.45).contains(&r.mean),
        "mean {} out of [32.0, 32.45]",
        r.mean
    );
    assert!(
        (0.85..=1.35).contains(&r.variance),
        "variance {} out of [0.85, 1.35]",
        r.variance
    );
    let tv = total_variation(
        |c| r.histogram.freq_at(c as f64),
        |c| r.conjectured.prob(c),
        0..=64,
    );
    assert!(tv <= 0.06, "tv {tv} > 0.06");
    println!(
        "criterion 02 PASS: N=64 mean={:.4} variance={:.4} tv={:.4} ({:.2?})",
        r.mean,
        r.variance,
        tv,
        start.elapsed()
    );
}

#[test]
fn criterion_03_lc_distribution_odd_length() {
    let r = lc_experiment(&GeneratorConfig::default(), 65, 2000).unwrap();
    assert!(
        (32.55..=33.0).contains(&r.mean),
        "mean {} out of [32.55, 33.0]",
        r.mean
    );
    assert!(
        (0.85..=1.40).contains(&r.variance),
        "variance {} out of [0.85, 1.40]",
        r.variance
    );
    let tv = total_variation(
        |c| r.histogram.freq_at(c as f64),
        |c| r.conjectured.prob(c),
        0..=65,
    );
    assert!(tv <= 0.06, "tv {tv} > 0.06");
    println!(
        "criterion 03 PASS: N=65 mean={:.4} variance={:.4} tv={:.4}",
        r.mean, r.variance, tv
    );
}

#[test]
fn criterion_04_conjectured_pmf_mass_identity() {
    let mut worst = 0.0f64;
    for n in 3..=256usize {
        let expected = 1.0 - 2f64.powi(1 - n as i32);
        let err = (conjectured_pmf(n).mass() - expected).abs();
        worst = worst.max(err);
        assert!(err <= 1e-12, "N={n}: |mass - (1 - 2^(1-N))| = {err}");
    }
    println!("criterion 04 PASS: pmf mass identity for N in 3..=256, worst error {worst:.2e}");
}

#[test]
fn criterion_05_lc_profile_hugs_half_line() {
    let w = generate(&GeneratorConfig::default(), 553).unwrap();
    let profile = lc_profile(&w).values;
    let mut max_dev = 0.0f64;
    let mut prev = 0usize;
    for (idx, &c) in profile.iter().enumerate() {
        let i = idx + 1;
        max_dev = max_dev.max((c as f64 - i as f64 / 2.0).abs());
        if c != prev {
            assert_eq!(c, i - prev, "jump law broken at prefix {i}");
        }
        prev = c;
    }
    assert!(max_dev <= 10.0, "max |C_i - i/2| = {max_dev} > 10");
    println!("criterion 05 PASS: 553-bit profile max |C_i - i/2| = {max_dev}, jump law holds");
}

#[test]
fn criterion_06_normal_approximation_of_exact_law() {
    let exact = correlation_pmf_exact(127);
    let normal = correlation_pmf_normal(127);
    let max_diff = exact
        .probs
        .iter()
        .zip(&normal.probs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(max_diff <= 0.005, "max |exact - normal| = {max_diff}");
    let mass_err = (exact.total_mass() - 1.0).abs();
    assert!(mass_err <= 1e-12, "exact pmf mass error {mass_err}");
    println!(
        "criterion 06 PASS: N=127 max |exact - normal| = {max_diff:.6}, exact mass error {mass_err:.2e}"
    );
}

#[test]
fn criterion_07_correlation_experiment_tracks_reference() {
    let start = std::time::Instant::now();
    let h = corr_experiment(&GeneratorConfig::default(), 127, 10_000).unwrap();
    let reference = correlation_pmf_normal(127);
    let tv = 0.5
        * h.freqs
            .iter()
            .zip(&reference.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    assert!(tv <= 0.05, "tv {tv} > 0.05");
    println!(
        "criterion 07 PASS: N=127, 10^4 pairs, tv to reference law = {tv:.4} ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_08_autocorrelation_trace() {
    let trace = autocorr_trace(&GeneratorConfig::default(), 2000).unwrap();
    let r0 = trace.iter().find(|&&(j, _)| j == 0).unwrap().1;
    assert_eq!(r0, 1.0, "R(0) must be exactly 1");
    let max_offpeak = trace
        .iter()
        .filter(|&&(j, _)| j != 0)
        .map(|&(_, r)| r.abs())
        .fold(0.0f64, f64::max);
    assert!(max_offpeak <= 0.1, "max offpeak {max_offpeak} > 0.1");
    println!("criterion 08 PASS: R(0)=1, max offpeak |R(j)| = {max_offpeak:.4}");
}

#[test]
fn criterion_09_fips_battery() {
    let start = std::time::Instant::now();
    // the five table presets pass outright
    for name in ["S1", "S2", "S3", "S4", "S5"] {
        let cfg = presets::by_name(name).unwrap();
        let bits = generate(&cfg, 20_000).unwrap();
        let report = fips140_1(&bits).unwrap();
        assert!(
            report.overall.unwrap().passed(),
            "{name} failed FIPS:\n{}",
            report.to_csv()
        );
    }
    // 1000 fresh sequences with mixed starting abscissae
    let defaults = GeneratorConfig::default();
    let passes: u32 = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let cfg = GeneratorConfig {
                params: MapParameters {
                    x0: mix_x0(i),
                    ..defaults.params
                },
                ..defaults
            };
            let bits = generate(&cfg, 20_000)
                .unwrap_or_else(|e| panic!("index {i} failed to generate: {e}"));
            fips140_1(&bits).unwrap().overall.unwrap().passed() as u32
        })
        .sum();
    let rate = passes as f64 / 1000.0;
    assert!(rate >= 0.99, "mixed-x0 pass rate {rate} < 0.99");
    println!(
        "criterion 09 PASS: S1..S5 pass FIPS; mixed-x0 batch {passes}/1000 ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_10_basic_tests_on_r1() {
    let cfg = presets::by_name("R1").unwrap();
    let bits = generate(&cfg, 128).unwrap();
    let report = stattests::menezes_battery(&bits).unwrap();
    for name in ["X1", "X2", "X3(2)", "X3(3)", "X4"] {
        let e = report.entry(name).unwrap();
        assert!(e.verdict.passed(), "{name} = {} failed", e.value);
    }
    let x5_rows: Vec<&stattests::TestEntry> = report
        .entries
        .iter()
        .filter(|e| e.name.starts_with("X5("))
        .collect();
    assert_eq!(x5_rows.len(), 64);
    let x5_failures = x5_rows.iter().filter(|e| !e.verdict.passed()).count();
    assert!(x5_failures <= 2, "{x5_failures} X5 rows failed");
    println!(
        "criterion 10 PASS: R1 passes X1..X4 with {x5_failures}/64 X5 failures"
    );
}

#[test]
fn criterion_11_keyspace_sizes() {
    let k32 = keyspace_bits(&KeyspaceSpec::with_epsilon(EPSILON_32));
    let k64 = keyspace_bits(&KeyspaceSpec::with_epsilon(EPSILON_64));
    assert!((k32 - 97.0).abs() <= 0.5, "k32 = {k32}");
    assert!((k64 - 213.0).abs() <= 0.5, "k64 = {k64}");
    println!("criterion 11 PASS: log2(K) = {k32:.3} at eps32, {k64:.3} at eps64");
}

#[test]
fn criterion_12_cipher_involution() {
    let start = std::time::Instant::now();
    let failures: usize = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC1F0 + i);
            let preset = presets::NAMES[rng.random_range(0..presets::NAMES.len())];
            let cfg = GeneratorConfig {
                decimation: rng.random_range(1..=40),
                calibration: rng.random_range(10..=500),
                discard: rng.random_range(0..=300),
                seed2: rng.random(),
                seed1: rng.random(),
                ..presets::by_name(preset).unwrap()
            };
            let mut message = vec![0u8; rng.random_range(0..=200)];
            rng.fill_bytes(&mut message);
            let ct = cipher::vernam(&message, &cfg).unwrap();
            let rt = cipher::vernam(&ct, &cfg).unwrap();
            (ct.len() != message.len() || rt != message) as usize
        })
        .sum();
    assert_eq!(failures, 0, "{failures} round-trips broke");
    println!(
        "criterion 12 PASS: 1000 random messages round-trip under random configs ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_13_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_henonseq");
    let dir = tempfile::tempdir().unwrap();
    let rerun_identical = |args: &[&str], files: &[&str]| {
        let mut captured: Option<(Vec<u8>, Vec<Vec<u8>>)> = None;
        for pass in 0..2 {
            let sub = dir.path().join(format!("pass{pass}"));
            std::fs::create_dir_all(&sub).unwrap();
            let args: Vec<String> = args
                .iter()
                .map(|a| a.replace("{DIR}", sub.to_str().unwrap()))
                .collect();
            let output = Command::new(bin)
                .args(&args)
                .current_dir(&sub)
                .output()
                .expect("spawn");
            assert!(
                output.status.success(),
                "{args:?}: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            let file_bytes: Vec<Vec<u8>> = files
                .iter()
                .map(|f| std::fs::read(sub.join(f)).expect(f))
                .collect();
            match &captured {
                None => captured = Some((output.stdout, file_bytes)),
                Some((stdout, bytes)) => {
                    assert_eq!(&output.stdout, stdout, "stdout differs for {args:?}");
                    assert_eq!(&file_bytes, bytes, "files differ for {args:?}");
                }
            }
        }
    };

    rerun_identical(
        &["generate", "--preset", "U2", "--count", "4096", "--out", "{DIR}/w.bits"],
        &["w.bits"],
    );
    rerun_identical(
        &["generate", "--preset", "S3", "--count", "20000", "--format", "ascii", "--out", "{DIR}/w.txt"],
        &["w.txt"],
    );
    rerun_identical(
        &["experiment", "lc", "--bits", "64", "--trials", "100", "--out-dir", "{DIR}"],
        &["fig2a.csv", "fig2b.csv"],
    );
    rerun_identical(
        &["experiment", "autocorr", "--bits", "400", "--out-dir", "{DIR}"],
        &["fig6.csv"],
    );
    rerun_identical(&["keyspace", "--precision", "32"], &[]);

    // battery report over a fixed generated input
    let input = dir.path().join("fips_in.txt");
    let gen = Command::new(bin)
        .args(["generate", "--preset", "S1", "--count", "20000", "--format", "ascii", "--out"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(gen.status.success());
    let mut first: Option<Vec<u8>> = None;
    for _ in 0..2 {
        let out = Command::new(bin)
            .args(["test", "fips"])
            .arg(&input)
            .output()
            .unwrap();
        assert!(out.status.success());
        match &first {
            None => first = Some(out.stdout),
            Some(prev) => assert_eq!(&out.stdout, prev, "fips report differs"),
        }
    }

    println!("criterion 13 PASS: repeated CLI runs are byte-identical across commands");
}
