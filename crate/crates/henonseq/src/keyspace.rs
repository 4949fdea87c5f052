//! Keyspace-size estimation.
//!
//! The key of the cipher is the tuple (alpha, beta, x0, y0, P). Each real
//! parameter contributes `width / epsilon` representable values at a given
//! floating-point precision, P contributes its admissible integer count,
//! and the keyspace size is the product. Everything is computed in the
//! log2 domain.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest representable increment of IEEE-754 binary32 near 1.
pub const EPSILON_32: f64 = 1.1921e-7;
/// Smallest representable increment of IEEE-754 binary64 near 1.
pub const EPSILON_64: f64 = 2.2204e-16;

/// Interval widths of the four real key parameters, the count of
/// admissible decimation factors, and the representable increment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyspaceSpec {
    pub alpha_width: f64,
    pub beta_width: f64,
    pub x0_width: f64,
    pub y0_width: f64,
    pub p_count: u64,
    pub epsilon: f64,
}

impl KeyspaceSpec {
    /// The recommended parameter ranges: alpha in (1.16, 1.41), beta in
    /// (0.2, 0.3), x0 in (-1, 1), y0 in (-0.35, 0.35), P in (80, 1000).
    pub fn with_epsilon(epsilon: f64) -> Self {
        KeyspaceSpec {
            alpha_width: 1.41 - 1.16,
            beta_width: 0.3 - 0.2,
            x0_width: 2.0,
            y0_width: 0.7,
            p_count: 1000 - 80,
            epsilon,
        }
    }

    pub fn validate(&self) -> Result<(), KeyspaceError> {
        for (name, v) in [
            ("alpha_width", self.alpha_width),
            ("beta_width", self.beta_width),
            ("x0_width", self.x0_width),
            ("y0_width", self.y0_width),
            ("epsilon", self.epsilon),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(KeyspaceError::NonPositive { name });
            }
        }
        if self.p_count < 1 {
            return Err(KeyspaceError::NoDecimationValues);
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum KeyspaceError {
    #[error("{name} must be positive and finite")]
    NonPositive { name: &'static str },
    #[error("p_count must be at least 1")]
    NoDecimationValues,
}

/// log2 of the keyspace size: the sum of per-parameter contributions
/// `log2(width / epsilon)` plus `log2(p_count)`.
pub fn keyspace_bits(spec: &KeyspaceSpec) -> f64 {
    let real = [
        spec.alpha_width,
        spec.beta_width,
        spec.x0_width,
        spec.y0_width,
    ];
    real.iter().map(|w| (w / spec.epsilon).log2()).sum::<f64>() + (spec.p_count as f64).log2()
}
