//! Pairwise correlation, cyclic autocorrelation, and the reference
//! distributions of the correlation of random sequence pairs (exact
//! binomial and its normal approximation).

use crate::bits::BitSequence;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CorrError {
    #[error("sequences differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty sequence")]
    EmptySequence,
}

/// Correlation of two equal-length sequences:
/// `(agreements - disagreements) / N`, in `[-1, 1]`.
///
/// The returned value is the exact dyadic `(2A - N) / N` with an integer
/// numerator, so it compares bit-for-bit equal with the matching entry of
/// [`support_theta`].
pub fn correlation(u: &BitSequence, v: &BitSequence) -> Result<f64, CorrError> {
    if u.len() != v.len() {
        return Err(CorrError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.is_empty() {
        return Err(CorrError::EmptySequence);
    }
    let n = u.len();
    let agreements = n - u.hamming_distance(v);
    Ok(theta_from_agreements(n, agreements))
}

/// `theta` for a given agreement count.
pub fn theta_from_agreements(n: usize, agreements: usize) -> f64 {
    (2 * agreements as i64 - n as i64) as f64 / n as f64
}

/// The r-th attainable correlation value, `2r/N - 1`, for `r = 0 ..= N`.
pub fn support_theta(n: usize, r: usize) -> f64 {
    theta_from_agreements(n, r)
}

/// Cyclic autocorrelation `R(j)`: correlation of `w` with itself
/// cyclically right-shifted by `j`. Negative `j` shifts left; the shift
/// is reduced modulo the length either way.
pub fn autocorrelation(w: &BitSequence, j: i64) -> Result<f64, CorrError> {
    if w.is_empty() {
        return Err(CorrError::EmptySequence);
    }
    let n = w.len() as i64;
    let shift = j.rem_euclid(n) as usize;
    correlation(w, &w.rotate_right(shift))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfKind {
    ExactBinomial,
    NormalApprox,
}

/// A probability law on the attainable correlation values of N-bit pairs.
///
/// `support[r]` is `2r/N - 1` and `probs[r]` its probability, `r = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationPmf {
    pub n: usize,
    pub support: Vec<f64>,
    pub probs: Vec<f64>,
    pub kind: PmfKind,
}

impl CorrelationPmf {
    /// Probability at an arbitrary value: zero off the attainable set.
    pub fn prob_at(&self, theta: f64) -> f64 {
        let r = ((theta + 1.0) * self.n as f64 / 2.0).round();
        if r < 0.0 || r > self.n as f64 {
            return 0.0;
        }
        let r = r as usize;
        if support_theta(self.n, r) == theta {
            self.probs[r]
        } else {
            0.0
        }
    }

    pub fn total_mass(&self) -> f64 {
        let mut terms = self.probs.clone();
        terms.sort_unstable_by(f64::total_cmp);
        terms.iter().sum()
    }
}

/// Exact law of the correlation of two random N-bit sequences:
/// `P(A = r) = C(N, r) / 2^N` placed at `theta = 2r/N - 1`.
///
/// Binomial coefficients are evaluated through log-gamma, so the law is
/// stable far past the overflow point of integer binomials.
pub fn correlation_pmf_exact(n: usize) -> CorrelationPmf {
    assert!(n >= 1);
    let ln2 = 2.0f64.ln();
    let nf = n as f64;
    let (mut support, mut probs) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
    for r in 0..=n {
        let rf = r as f64;
        let ln_choose = ln_gamma(nf + 1.0) - ln_gamma(rf + 1.0) - ln_gamma(nf - rf + 1.0);
        support.push(support_theta(n, r));
        probs.push((ln_choose - nf * ln2).exp());
    }
    CorrelationPmf {
        n,
        support,
        probs,
        kind: PmfKind::ExactBinomial,
    }
}

/// Normal approximation to the same law:
/// `sqrt(2 / (N pi)) * exp(-N theta^2 / 2)` on the attainable set.
pub fn correlation_pmf_normal(n: usize) -> CorrelationPmf {
    assert!(n >= 1);
    let nf = n as f64;
    let scale = (2.0 / (nf * PI)).sqrt();
    let (mut support, mut probs) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
    for r in 0..=n {
        let theta = support_theta(n, r);
        support.push(theta);
        probs.push(scale * (-nf * theta * theta / 2.0).exp());
    }
    CorrelationPmf {
        n,
        support,
        probs,
        kind: PmfKind::NormalApprox,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_and_complementary_sequences() {
        let u = BitSequence::from_binary_str("10110010");
        assert_eq!(correlation(&u, &u).unwrap(), 1.0);
        assert_eq!(correlation(&u, &u.complement()).unwrap(), -1.0);
    }

    #[test]
    fn half_agreement_is_zero() {
        let u = BitSequence::from_binary_str("1010");
        let v = BitSequence::from_binary_str("1001");
        assert_eq!(correlation(&u, &v).unwrap(), 0.0);
    }

    #[test]
    fn error_paths() {
        let u = BitSequence::from_binary_str("101");
        let v = BitSequence::from_binary_str("10");
        assert_eq!(
            correlation(&u, &v),
            Err(CorrError::LengthMismatch { left: 3, right: 2 })
        );
        let e = BitSequence::new();
        assert_eq!(correlation(&e, &e), Err(CorrError::EmptySequence));
        assert_eq!(autocorrelation(&e, 1), Err(CorrError::EmptySequence));
    }

    #[test]
    fn autocorrelation_basics() {
        let w = BitSequence::from_binary_str("1011001110");
        assert_eq!(autocorrelation(&w, 0).unwrap(), 1.0);
        let ones = BitSequence::from_binary_str("1111");
        for j in -5..=5 {
            assert_eq!(autocorrelation(&ones, j).unwrap(), 1.0);
        }
        let alt = BitSequence::from_binary_str("1010");
        assert_eq!(autocorrelation(&alt, 1).unwrap(), -1.0);
    }

    #[test]
    fn exact_pmf_small_case() {
        let pmf = correlation_pmf_exact(4);
        assert!((pmf.prob_at(0.0) - 0.375).abs() < 1e-12); // C(4,2)/16
        assert!((pmf.prob_at(1.0) - 0.0625).abs() < 1e-12);
        assert!((pmf.prob_at(-1.0) - 0.0625).abs() < 1e-12);
        let pmf1 = correlation_pmf_exact(1);
        assert!((pmf1.prob_at(1.0) - 0.5).abs() < 1e-12);
        assert!((pmf1.prob_at(-1.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn exact_pmf_matches_integer_binomials() {
        // u128 binomials are exact up to N = 60; the log-gamma route must
        // agree to better than 1e-12 relative.
        for n in [1usize, 7, 20, 41, 60] {
            let pmf = correlation_pmf_exact(n);
            let mut choose = vec![1u128];
            for r in 1..=n {
                let prev = *choose.last().unwrap();
                choose.push(prev * (n - r + 1) as u128 / r as u128);
            }
            let denom = 2f64.powi(n as i32);
            for (r, (&c, &p)) in choose.iter().zip(&pmf.probs).enumerate() {
                let exact = c as f64 / denom;
                let rel = (p - exact).abs() / exact;
                assert!(rel < 1e-12, "N={n} r={r} rel={rel}");
            }
        }
    }

    #[test]
    fn normal_pmf_values() {
        let pmf = correlation_pmf_normal(4);
        assert!((pmf.prob_at(0.0) - 0.3989422804014327).abs() < 1e-12);
        let tail = correlation_pmf_normal(127);
        assert!(tail.prob_at(1.0) < 1e-28);
    }

    #[test]
    fn off_support_values_have_zero_probability() {
        for n in [4usize, 7, 127] {
            let pmf = correlation_pmf_normal(n);
            assert_eq!(pmf.prob_at(3.0 / (2.0 * n as f64)), 0.0);
            assert_eq!(pmf.prob_at(2.0), 0.0);
            assert_eq!(correlation_pmf_exact(n).prob_at(3.0 / (2.0 * n as f64)), 0.0);
        }
    }

    #[test]
    fn exact_pmf_mass_is_one() {
        for n in [1usize, 4, 63, 127, 128, 1000] {
            assert!((correlation_pmf_exact(n).total_mass() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_tracks_exact_at_demo_length() {
        let exact = correlation_pmf_exact(127);
        let normal = correlation_pmf_normal(127);
        let max_diff = exact
            .probs
            .iter()
            .zip(&normal.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff <= 0.005, "max diff {max_diff}");
    }

    proptest! {
        #[test]
        fn correlation_properties(
            data in proptest::collection::vec(any::<(bool, bool)>(), 1..200)
        ) {
            let u: BitSequence = data.iter().map(|&(a, _)| a).collect();
            let v: BitSequence = data.iter().map(|&(_, b)| b).collect();
            let t = correlation(&u, &v).unwrap();
            prop_assert!((-1.0..=1.0).contains(&t));
            prop_assert_eq!(t, correlation(&v, &u).unwrap());
            prop_assert_eq!(correlation(&u, &v.complement()).unwrap(), -t);
            // attainable-value law: t sits exactly on the support set
            let n = u.len();
            let r = ((t + 1.0) * n as f64 / 2.0).round() as usize;
            prop_assert_eq!(t, support_theta(n, r));
        }

        #[test]
        fn autocorrelation_is_periodic_in_shift(
            bits in proptest::collection::vec(any::<bool>(), 1..100),
            j in -300i64..300,
        ) {
            let w: BitSequence = bits.iter().copied().collect();
            let n = w.len() as i64;
            let a = autocorrelation(&w, j).unwrap();
            prop_assert_eq!(a, autocorrelation(&w, j.rem_euclid(n)).unwrap());
            prop_assert_eq!(a, autocorrelation(&w, j - n).unwrap());
        }

        #[test]
        fn autocorrelation_set_invariant_under_rotation(
            bits in proptest::collection::vec(any::<bool>(), 2..64),
            rot in 0usize..64,
        ) {
            let w: BitSequence = bits.iter().copied().collect();
            let v = w.rotate_right(rot % w.len());
            for j in 0..w.len() as i64 {
                prop_assert_eq!(
                    autocorrelation(&w, j).unwrap(),
                    autocorrelation(&v, j).unwrap()
                );
            }
        }
    }
}
