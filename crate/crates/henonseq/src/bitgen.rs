//! Bit generation pipeline: threshold calibration, per-state bit
//! extraction, decimation, and the two-bit-history output combiner.
//!
//! A configured run iterates the map `discard` times (transient removal),
//! calibrates thresholds as the medians of the next `calibration` x- and
//! y-values, then keeps iterating. Every `decimation`-th post-calibration
//! iterate contributes one bit per coordinate; the two decimated streams
//! are merged by a rule keyed on the previous two y-stream bits. Producing
//! `n` output bits therefore consumes exactly
//! `discard + calibration + decimation * n` map iterations.

use crate::bits::BitSequence;
use crate::map::{self, DivergenceError, MapParameters, State};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Full parameter tuple for a generator run.
///
/// `seed2` and `seed1` prime the combiner history: `seed2` plays the role
/// of the output-stream y-bit two steps before the first real one, `seed1`
/// the bit one step before.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub params: MapParameters,
    /// Keep every P-th extracted bit (P >= 1).
    pub decimation: u32,
    /// Number of orbit samples whose median defines each threshold (T >= 1).
    pub calibration: u32,
    /// Transient iterations dropped before calibration.
    pub discard: u32,
    pub seed2: bool,
    pub seed1: bool,
    /// Divergence bound passed to the orbit.
    pub bound: f64,
}

impl Default for GeneratorConfig {
    /// Canonical chaotic coefficients with the strongest built-in
    /// decimation preset (P = 117); see [`crate::presets`]. The
    /// 200-iteration transient discard keeps calibration clear of
    /// off-attractor startup bias.
    fn default() -> Self {
        GeneratorConfig {
            params: MapParameters {
                alpha: 1.40,
                beta: 0.30,
                x0: -1.0,
                y0: 1.0,
            },
            decimation: 117,
            calibration: 1000,
            discard: 200,
            seed2: false,
            seed1: true,
            bound: map::DEFAULT_BOUND,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ConfigError {
    #[error("decimation factor must be at least 1")]
    ZeroDecimation,
    #[error("calibration window must be at least 1")]
    ZeroCalibration,
    #[error("divergence bound must be positive")]
    NonPositiveBound,
    #[error(transparent)]
    Parameters(#[from] map::InvalidParameters),
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        if self.decimation < 1 {
            return Err(ConfigError::ZeroDecimation);
        }
        if self.calibration < 1 {
            return Err(ConfigError::ZeroCalibration);
        }
        let bound_ok = self.bound.is_finite() && self.bound > 0.0;
        if !bound_ok {
            return Err(ConfigError::NonPositiveBound);
        }
        Ok(())
    }
}

/// Per-coordinate comparison thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub tau_x: f64,
    pub tau_y: f64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum GeneratorError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Divergence(#[from] DivergenceError),
}

/// Median; even-sized inputs take the mean of the two middle order
/// statistics. Panics on empty input.
fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Run the transient and calibration phases only.
///
/// Returns the thresholds and the state reached after
/// `discard + calibration` iterations, which is where bit generation
/// resumes; calibration samples are never reused as bit sources.
pub fn calibrate(cfg: &GeneratorConfig) -> Result<(Thresholds, State), GeneratorError> {
    cfg.validate()?;
    let mut state = cfg.params.initial_state();
    for _ in 0..cfg.discard {
        state = map::advance(state, &cfg.params, cfg.bound)?;
    }
    let t = cfg.calibration as usize;
    let mut xs = Vec::with_capacity(t);
    let mut ys = Vec::with_capacity(t);
    for _ in 0..t {
        state = map::advance(state, &cfg.params, cfg.bound)?;
        xs.push(state.x);
        ys.push(state.y);
    }
    let thresholds = Thresholds {
        tau_x: median(&mut xs),
        tau_y: median(&mut ys),
    };
    Ok((thresholds, state))
}

/// Threshold comparison; the boundary `v == tau` maps to 0.
pub fn extract_bit(v: f64, tau: f64) -> bool {
    v > tau
}

/// One combiner step: emit the output bit for `(bx, by)` given the two
/// previous y-stream bits `(p2, p1)`, and return the shifted history.
fn combine_step(bx: bool, by: bool, p2: bool, p1: bool) -> (bool, (bool, bool)) {
    let out = match (p2, p1) {
        (false, false) => bx,
        (false, true) => !bx,
        (true, false) => by,
        (true, true) => !by,
    };
    (out, (p1, by))
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("combiner inputs differ in length: {left} vs {right}")]
pub struct LengthMismatch {
    pub left: usize,
    pub right: usize,
}

/// Merge two equal-length decimated streams through the history rule.
pub fn combine(
    bx: &BitSequence,
    by: &BitSequence,
    seed2: bool,
    seed1: bool,
) -> Result<BitSequence, LengthMismatch> {
    if bx.len() != by.len() {
        return Err(LengthMismatch {
            left: bx.len(),
            right: by.len(),
        });
    }
    let mut hist = (seed2, seed1);
    let mut out = BitSequence::with_capacity(bx.len());
    for (x, y) in bx.iter().zip(by.iter()) {
        let (bit, next) = combine_step(x, y, hist.0, hist.1);
        out.push(bit);
        hist = next;
    }
    Ok(out)
}

/// A calibrated generator positioned at the start of the output stream.
///
/// Memory use is constant: only the current orbit state and two history
/// bits are retained, however many bits are drawn.
#[derive(Debug, Clone)]
pub struct Generator {
    cfg: GeneratorConfig,
    thresholds: Thresholds,
    state: State,
    hist: (bool, bool),
}

impl Generator {
    pub fn new(cfg: GeneratorConfig) -> Result<Self, GeneratorError> {
        let (thresholds, state) = calibrate(&cfg)?;
        Ok(Generator {
            hist: (cfg.seed2, cfg.seed1),
            cfg,
            thresholds,
            state,
        })
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    /// Total map iterations consumed so far (the current orbit index).
    pub fn iterations(&self) -> u64 {
        self.state.k
    }

    /// Draw the next output bit, consuming `decimation` map iterations.
    pub fn next_bit(&mut self) -> Result<bool, DivergenceError> {
        for _ in 0..self.cfg.decimation {
            self.state = map::advance(self.state, &self.cfg.params, self.cfg.bound)?;
        }
        let bx = extract_bit(self.state.x, self.thresholds.tau_x);
        let by = extract_bit(self.state.y, self.thresholds.tau_y);
        let (bit, next) = combine_step(bx, by, self.hist.0, self.hist.1);
        self.hist = next;
        Ok(bit)
    }

    /// Collect the next `n` output bits.
    pub fn take_bits(&mut self, n: usize) -> Result<BitSequence, DivergenceError> {
        let mut out = BitSequence::with_capacity(n);
        for _ in 0..n {
            out.push(self.next_bit()?);
        }
        Ok(out)
    }
}

/// Calibrate and generate `n` output bits in one call.
pub fn generate(cfg: &GeneratorConfig, n: usize) -> Result<BitSequence, GeneratorError> {
    let mut generator = Generator::new(*cfg)?;
    Ok(generator.take_bits(n)?)
}
