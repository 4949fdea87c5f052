//! Pseudorandom binary sequences from the two-dimensional Henon map.
//!
//! The pipeline iterates the map, calibrates per-coordinate thresholds from
//! the median of an orbit window, extracts one bit per coordinate per
//! iterate, keeps every P-th bit of each stream, and merges the two
//! decimated streams through a two-bit-history combiner. Around the
//! generator sit the analysis tools used to judge the output: linear
//! complexity (Berlekamp-Massey) with its profile and reference
//! distribution, pairwise correlation and cyclic autocorrelation with exact
//! and normal reference laws, the five basic randomness tests and the
//! FIPS 140-1 battery, keyspace-size estimation, and a Vernam-style XOR
//! cipher driven by the keystream.

pub mod bitfile;
pub mod bitgen;
pub mod bits;
pub mod cipher;
pub mod corr;
pub mod experiments;
pub mod keyspace;
pub mod lincomp;
pub mod map;
pub mod presets;
pub mod stattests;

pub use bitgen::{Generator, GeneratorConfig};
pub use bits::BitSequence;
pub use map::{MapParameters, State};
