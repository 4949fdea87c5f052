//! The two-dimensional Henon map and orbit generation.
//!
//! The map
//!
//! ```text
//! x' = -a*x^2 + y + 1
//! y' = b*x
//! ```
//!
//! is evaluated in 64-bit IEEE-754 with a fixed operation order,
//! `(((-a)*x)*x + y) + 1`, so orbits are bit-identical across platforms.
//! Rust never reorders or contracts float expressions, which makes the
//! source order binding.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Map coefficients and initial state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapParameters {
    pub alpha: f64,
    pub beta: f64,
    pub x0: f64,
    pub y0: f64,
}

/// Default divergence bound; the map escapes to infinity for many
/// parameter/state combinations and must fail loudly before overflow.
pub const DEFAULT_BOUND: f64 = 1e6;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("parameter {name} is not finite")]
pub struct InvalidParameters {
    pub name: &'static str,
}

impl MapParameters {
    pub fn new(alpha: f64, beta: f64, x0: f64, y0: f64) -> Result<Self, InvalidParameters> {
        let p = MapParameters { alpha, beta, x0, y0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), InvalidParameters> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("x0", self.x0),
            ("y0", self.y0),
        ] {
            if !v.is_finite() {
                return Err(InvalidParameters { name });
            }
        }
        Ok(())
    }

    /// The orbit start `(x0, y0)` at iteration index 0.
    pub fn initial_state(&self) -> State {
        State {
            x: self.x0,
            y: self.y0,
            k: 0,
        }
    }
}

/// A point of an orbit together with its iteration index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub y: f64,
    pub k: u64,
}

/// Orbit left the bound at iteration `step` (or became non-finite).
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("orbit diverged at iteration {step}")]
pub struct DivergenceError {
    pub step: u64,
}

/// One map application. Pure; divergence is the caller's concern.
pub fn iterate(s: State, p: &MapParameters) -> State {
    State {
        x: ((-p.alpha * s.x) * s.x + s.y) + 1.0,
        y: p.beta * s.x,
        k: s.k + 1,
    }
}

/// `iterate` plus the divergence check used by every orbit consumer.
pub fn advance(s: State, p: &MapParameters, bound: f64) -> Result<State, DivergenceError> {
    let next = iterate(s, p);
    if !next.x.is_finite() || !next.y.is_finite() || next.x.abs() > bound || next.y.abs() > bound {
        Err(DivergenceError { step: next.k })
    } else {
        Ok(next)
    }
}

/// The first `n` iterates after the initial state, as a streaming iterator.
///
/// Yields `X_1 ..= X_n`; after a [`DivergenceError`] the iterator fuses.
pub fn orbit(params: MapParameters, n: u64, bound: f64) -> Orbit {
    Orbit {
        params,
        state: params.initial_state(),
        remaining: n,
        bound,
        failed: false,
    }
}

pub struct Orbit {
    params: MapParameters,
    state: State,
    remaining: u64,
    bound: f64,
    failed: bool,
}

impl Iterator for Orbit {
    type Item = Result<State, DivergenceError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        match advance(self.state, &self.params, self.bound) {
            Ok(next) => {
                self.state = next;
                Some(Ok(next))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}
