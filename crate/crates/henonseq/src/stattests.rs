//! Randomness test batteries: the five basic tests (frequency, serial,
//! poker, runs, autocorrelation) and the FIPS 140-1 battery, producing
//! structured pass/fail reports.
//!
//! All thresholds are fixed constants of the batteries. The basic tests
//! are one-sided at the 1% level, so about 1% of rows are expected to
//! fail even on ideal input; the report carries per-row verdicts and no
//! overall verdict. FIPS 140-1 is interval-based on exactly 20000 bits
//! with strictly exclusive bounds, and its overall verdict is the
//! conjunction of all rows.

use crate::bits::BitSequence;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// One named statistic with its acceptance bound and verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestEntry {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub verdict: Verdict,
}

/// A battery run. `overall` is present only for batteries whose contract
/// is all-rows-pass (FIPS 140-1); the basic tests report per-row only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub battery: String,
    pub entries: Vec<TestEntry>,
    pub overall: Option<Verdict>,
}

impl TestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,bound,verdict\n");
        for e in &self.entries {
            let verdict = if e.verdict.passed() { "pass" } else { "fail" };
            writeln!(out, "{},{},{},{}", e.name, e.value, e.bound, verdict).unwrap();
        }
        if let Some(overall) = self.overall {
            let verdict = if overall.passed() { "pass" } else { "fail" };
            writeln!(out, "overall,,,{verdict}").unwrap();
        }
        out
    }

    pub fn entry(&self, name: &str) -> Option<&TestEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum StatTestError {
    #[error("sequence too short: {len} bits, need at least {min}")]
    SequenceTooShort { len: usize, min: usize },
    #[error("battery requires exactly {expected} bits, got {len}")]
    WrongLength { len: usize, expected: usize },
}

/// Counts of runs of ones and runs of zeros, keyed by exact run length.
pub(crate) fn run_length_counts(w: &BitSequence) -> (BTreeMap<usize, u64>, BTreeMap<usize, u64>) {
    let mut ones = BTreeMap::new();
    let mut zeros = BTreeMap::new();
    if w.is_empty() {
        return (ones, zeros);
    }
    let mut current = w.get(0);
    let mut length = 1usize;
    for i in 1..w.len() {
        let bit = w.get(i);
        if bit == current {
            length += 1;
        } else {
            *if current { &mut ones } else { &mut zeros }
                .entry(length)
                .or_insert(0) += 1;
            current = bit;
            length = 1;
        }
    }
    *if current { &mut ones } else { &mut zeros }
        .entry(length)
        .or_insert(0) += 1;
    (ones, zeros)
}

/// Occurrence counts of the 2^m non-overlapping m-bit block patterns
/// (MSB-first block value); trailing bits that do not fill a block are
/// ignored.
fn poker_counts(w: &BitSequence, m: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << m];
    for block in 0..w.len() / m {
        let mut value = 0usize;
        for j in 0..m {
            value = value << 1 | w.get(block * m + j) as usize;
        }
        counts[value] += 1;
    }
    counts
}

fn entry(name: String, value: f64, bound: String, pass: bool) -> TestEntry {
    TestEntry {
        name,
        value,
        bound,
        verdict: Verdict::from_bool(pass),
    }
}

const X1_BOUND: f64 = 6.634897;
const X2_BOUND: f64 = 9.210340;
const X3_2_BOUND: f64 = 11.344867;
const X3_3_BOUND: f64 = 18.475307;
const X4_BOUND: f64 = 9.210340;
const X5_BOUND: f64 = 2.326348;

/// The five basic randomness tests at the fixed 1% thresholds.
///
/// The autocorrelation statistic is evaluated for every shift
/// `d = 1 ..= n/2`, one report row per shift.
pub fn menezes_battery(w: &BitSequence) -> Result<TestReport, StatTestError> {
    let n = w.len();
    if n < 100 {
        return Err(StatTestError::SequenceTooShort { len: n, min: 100 });
    }
    let nf = n as f64;
    let mut entries = Vec::new();

    // X1, frequency
    let n1 = w.count_ones() as f64;
    let n0 = nf - n1;
    let x1 = (n0 - n1) * (n0 - n1) / nf;
    entries.push(entry("X1".into(), x1, format!("< {X1_BOUND}"), x1 < X1_BOUND));

    // X2, serial (overlapping pairs)
    let mut pairs = [0f64; 4];
    for i in 0..n - 1 {
        pairs[(w.get(i) as usize) << 1 | w.get(i + 1) as usize] += 1.0;
    }
    let x2 = 4.0 / (nf - 1.0) * pairs.iter().map(|c| c * c).sum::<f64>()
        - 2.0 / nf * (n0 * n0 + n1 * n1)
        + 1.0;
    entries.push(entry("X2".into(), x2, format!("< {X2_BOUND}"), x2 < X2_BOUND));

    // X3, poker over m-bit non-overlapping blocks
    for (m, bound) in [(2usize, X3_2_BOUND), (3, X3_3_BOUND)] {
        let k = (n / m) as f64;
        let sum_sq: f64 = poker_counts(w, m).iter().map(|&c| (c as f64) * (c as f64)).sum();
        let x3 = (1u64 << m) as f64 / k * sum_sq - k;
        entries.push(entry(format!("X3({m})"), x3, format!("< {bound}"), x3 < bound));
    }

    // X4, runs against the expected exact-length census
    let expected = |i: usize| (nf - i as f64 + 3.0) / 2f64.powi(i as i32 + 2);
    let mut k_max = 0usize;
    while expected(k_max + 1) >= 5.0 {
        k_max += 1;
    }
    let (ones_runs, zeros_runs) = run_length_counts(w);
    let mut x4 = 0.0;
    for i in 1..=k_max {
        let e = expected(i);
        let b = ones_runs.get(&i).copied().unwrap_or(0) as f64;
        let g = zeros_runs.get(&i).copied().unwrap_or(0) as f64;
        x4 += (b - e) * (b - e) / e + (g - e) * (g - e) / e;
    }
    entries.push(entry("X4".into(), x4, format!("< {X4_BOUND}"), x4 < X4_BOUND));

    // X5, non-cyclic autocorrelation over every shift up to n/2
    for d in 1..=n / 2 {
        let disagreements = w.window(0, n - d).hamming_distance(&w.window(d, n - d)) as f64;
        let tail = (n - d) as f64;
        let x5 = 2.0 * (disagreements - tail / 2.0) / tail.sqrt();
        entries.push(entry(
            format!("X5({d})"),
            x5,
            format!("|X5| < {X5_BOUND}"),
            x5.abs() < X5_BOUND,
        ));
    }

    Ok(TestReport {
        battery: "menezes".into(),
        entries,
        overall: None,
    })
}

/// Required input length for the FIPS 140-1 battery.
pub const FIPS_BITS: usize = 20_000;

/// Exclusive acceptance intervals for runs of length 1..=6 (6 pools all
/// longer runs), identical for ones-runs and zeros-runs.
const FIPS_RUN_INTERVALS: [(u64, u64); 6] = [
    (2267, 2733),
    (1079, 1421),
    (502, 748),
    (223, 402),
    (90, 223),
    (90, 223),
];

/// Any run this long or longer fails the long-run test.
const FIPS_LONG_RUN: usize = 34;

/// The FIPS 140-1 battery on exactly 20000 bits: monobit, poker (m = 4),
/// runs with pooling at length 6, and the long-run check.
pub fn fips140_1(w: &BitSequence) -> Result<TestReport, StatTestError> {
    if w.len() != FIPS_BITS {
        return Err(StatTestError::WrongLength {
            len: w.len(),
            expected: FIPS_BITS,
        });
    }
    let mut entries = Vec::new();

    let n1 = w.count_ones() as u64;
    entries.push(entry(
        "n1".into(),
        n1 as f64,
        "9654 < n1 < 10346".into(),
        n1 > 9654 && n1 < 10346,
    ));

    let blocks = (FIPS_BITS / 4) as f64; // 5000
    let sum_sq: f64 = poker_counts(w, 4).iter().map(|&c| (c as f64) * (c as f64)).sum();
    let x3 = 16.0 / blocks * sum_sq - blocks;
    entries.push(entry(
        "X3".into(),
        x3,
        "1.03 < X3 < 57.40".into(),
        x3 > 1.03 && x3 < 57.40,
    ));

    let (ones_runs, zeros_runs) = run_length_counts(w);
    let pooled = |census: &BTreeMap<usize, u64>, i: usize| -> u64 {
        if i < 6 {
            census.get(&i).copied().unwrap_or(0)
        } else {
            census.iter().filter(|&(&len, _)| len >= 6).map(|(_, &c)| c).sum()
        }
    };
    for (idx, &(lo, hi)) in FIPS_RUN_INTERVALS.iter().enumerate() {
        let i = idx + 1;
        for (label, census) in [("B", &ones_runs), ("G", &zeros_runs)] {
            let count = pooled(census, i);
            entries.push(entry(
                format!("{label}{i}"),
                count as f64,
                format!("{lo} < {label}{i} < {hi}"),
                count > lo && count < hi,
            ));
        }
    }

    let longest = ones_runs
        .keys()
        .chain(zeros_runs.keys())
        .copied()
        .max()
        .unwrap_or(0);
    entries.push(entry(
        "long_run".into(),
        longest as f64,
        format!("longest run < {FIPS_LONG_RUN}"),
        longest < FIPS_LONG_RUN,
    ));

    let overall = entries.iter().all(|e| e.verdict.passed());
    Ok(TestReport {
        battery: "fips-140-1".into(),
        entries,
        overall: Some(Verdict::from_bool(overall)),
    })
}
