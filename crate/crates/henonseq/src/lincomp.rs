//! Linear complexity over GF(2): Berlekamp-Massey, per-prefix profiles,
//! and the reference distribution of linear complexity by sequence length.
//!
//! Connection polynomials are kept as packed bit words, so one
//! Berlekamp-Massey pass costs O(N^2) bit operations (word-parallel),
//! comfortable up to N around 1e5.

use crate::bits::BitSequence;
use std::collections::BTreeMap;
use thiserror::Error;

/// Outcome of a Berlekamp-Massey pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmaResult {
    /// Length of the shortest LFSR generating the input; 0 for all-zero.
    pub complexity: usize,
    /// Connection polynomial coefficients `c_0 ..= c_L` (always starts
    /// with 1); kept for debugging and recurrence verification.
    pub connection: BitSequence,
}

/// The per-prefix complexities `(C_1, ..., C_N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearComplexityProfile {
    pub values: Vec<usize>,
}

/// 64 bits of `words` starting at bit `pos`; positions past the end read
/// as zero.
#[inline]
fn fetch64(words: &[u64], pos: usize) -> u64 {
    let (w, b) = (pos / 64, pos % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> b;
    if b == 0 {
        lo
    } else {
        lo | (words.get(w + 1).copied().unwrap_or(0) << (64 - b))
    }
}

/// `dst ^= src << shift`, bitwise over packed words.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, word) in dst.iter_mut().enumerate().skip(ws) {
        let k = i - ws;
        let mut v = src.get(k).copied().unwrap_or(0) << bs;
        if bs != 0 && k > 0 {
            v |= src[k - 1] >> (64 - bs);
        }
        *word ^= v;
    }
}

fn bma_core(w: &BitSequence, mut profile: Option<&mut Vec<usize>>) -> (usize, Vec<u64>) {
    let n_bits = w.len();
    let words = n_bits / 64 + 2;
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = -1i64;

    // The discrepancy at step n is a dot product of c with the sequence
    // window ending at n, read backwards; storing the sequence reversed
    // turns every step into an aligned word scan at a sliding offset.
    let mut rev = vec![0u64; words + 1];
    for j in 0..n_bits {
        if w.get(n_bits - 1 - j) {
            rev[j / 64] |= 1u64 << (j % 64);
        }
    }

    for n in 0..n_bits {
        let offset = n_bits - 1 - n;
        let mut acc = 0u64;
        for (wi, &cw) in c.iter().enumerate() {
            if cw != 0 {
                acc ^= cw & fetch64(&rev, offset + 64 * wi);
            }
        }
        if acc.count_ones() % 2 == 1 {
            let shift = (n as i64 - m) as usize;
            if 2 * l <= n {
                let t = c.clone();
                xor_shifted(&mut c, &b, shift);
                l = n + 1 - l;
                m = n as i64;
                b = t;
            } else {
                xor_shifted(&mut c, &b, shift);
            }
        }
        if let Some(p) = profile.as_deref_mut() {
            p.push(l);
        }
    }
    (l, c)
}

fn connection_bits(l: usize, c_words: &[u64]) -> BitSequence {
    (0..=l)
        .map(|i| (c_words[i / 64] >> (i % 64)) & 1 == 1)
        .collect()
}

/// Full Berlekamp-Massey run returning complexity and connection
/// polynomial.
pub fn berlekamp_massey(w: &BitSequence) -> BmaResult {
    let (l, c) = bma_core(w, None);
    BmaResult {
        complexity: l,
        connection: connection_bits(l, &c),
    }
}

/// Length of the shortest LFSR generating `w`; all-zero input gives 0.
pub fn linear_complexity(w: &BitSequence) -> usize {
    bma_core(w, None).0
}

/// Per-prefix complexities from a single Berlekamp-Massey pass.
pub fn lc_profile(w: &BitSequence) -> LinearComplexityProfile {
    let mut values = Vec::with_capacity(w.len());
    bma_core(w, Some(&mut values));
    LinearComplexityProfile { values }
}

/// Reference probability law of the linear complexity of an N-bit random
/// sequence, over the attainable interior values `c = 1 ..= N-1`.
///
/// Total mass is `1 - 2^(1-N)`; the missing remainder sits on the
/// excluded extremes `c = 0` and `c = N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcDistribution {
    pub n: usize,
    pub pmf: BTreeMap<usize, f64>,
}

impl LcDistribution {
    pub fn prob(&self, c: usize) -> f64 {
        self.pmf.get(&c).copied().unwrap_or(0.0)
    }

    /// Total mass, summed smallest-terms-first for accuracy.
    pub fn mass(&self) -> f64 {
        let mut terms: Vec<f64> = self.pmf.values().copied().collect();
        terms.sort_unstable_by(f64::total_cmp);
        terms.iter().sum()
    }
}

/// The conjectured complexity law for an N-bit sequence (N >= 2); the
/// branch split sits at N/2 for even N and (N+1)/2 for odd N.
pub fn conjectured_pmf(n: usize) -> LcDistribution {
    assert!(n >= 2, "distribution needs N >= 2");
    let mut pmf = BTreeMap::new();
    for c in 1..n {
        let lower_branch = if n.is_multiple_of(2) {
            2 * c <= n
        } else {
            2 * c < n + 1
        };
        let exponent = if lower_branch {
            (n - 2 * c + 1) as i32
        } else {
            (2 * c - n) as i32
        };
        pmf.insert(c, 0.5f64.powi(exponent));
    }
    LcDistribution { n, pmf }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("need at least 2 samples, got {got}")]
pub struct InsufficientSamples {
    pub got: usize,
}

/// Mean and unbiased sample variance of a complexity sample.
pub fn lc_moments(samples: &[usize]) -> Result<(f64, f64), InsufficientSamples> {
    if samples.len() < 2 {
        return Err(InsufficientSamples { got: samples.len() });
    }
    let n = samples.len() as f64;
    let mean = samples.iter().map(|&c| c as f64).sum::<f64>() / n;
    let ss = samples
        .iter()
        .map(|&c| {
            let d = c as f64 - mean;
            d * d
        })
        .sum::<f64>();
    Ok((mean, ss / (n - 1.0)))
}
