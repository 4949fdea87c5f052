//! Built-in parameter sets.
//!
//! `R1`/`R2` are 128-bit basic-test samples, `S1`..`S5` drive the
//! FIPS 140-1 runs, and `U1`/`U2` are the large-scale presets used for
//! external suite exports. All share T = 1000, history seeds (0, 1), a
//! 200-iteration transient discard and the default divergence bound.

use crate::bitgen::GeneratorConfig;
use crate::map::MapParameters;

/// Preset names accepted by [`by_name`], in canonical order.
pub const NAMES: [&str; 9] = ["R1", "R2", "S1", "S2", "S3", "S4", "S5", "U1", "U2"];

/// Look up a preset by case-insensitive name.
pub fn by_name(name: &str) -> Option<GeneratorConfig> {
    let (alpha, beta, x0, y0, p) = match name.to_ascii_uppercase().as_str() {
        "R1" => (1.40, 0.30, -0.75, -0.02, 24),
        "R2" => (1.20, 0.30, -0.75, 0.32, 24),
        "S1" => (1.23, 0.25, -1.0, 1.0, 84),
        "S2" => (1.40, 0.25, -1.0, 1.0, 84),
        "S3" => (1.40, 0.30, -1.0, 1.0, 84),
        "S4" => (1.40, 0.30, -1.0, 1.0, 24),
        "S5" => (1.41, 0.21, -1.0, 1.0, 24),
        "U1" => (1.40, 0.30, -1.0, 1.0, 117),
        "U2" => (1.398, 0.283, 0.26, 0.29, 111),
        _ => return None,
    };
    Some(GeneratorConfig {
        params: MapParameters { alpha, beta, x0, y0 },
        decimation: p,
        ..GeneratorConfig::default()
    })
}
