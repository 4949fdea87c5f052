//! Vernam-style stream encryption: plaintext XOR keystream, where the
//! keystream is the generator output packed MSB-first into bytes. The
//! same operation decrypts.
//!
//! This is a research construction. It provides no authentication, no
//! key exchange and no nonce handling, and the resistance of the
//! keystream to cryptanalysis is an open question; do not use it to
//! protect real data.

use crate::bitgen::{Generator, GeneratorConfig, GeneratorError};
use crate::bits::BitSequence;
use crate::map::DivergenceError;
use std::io::{self, Read, Write};

/// XOR `data` against a bit stream packed MSB-first. Panics if fewer
/// than `8 * data.len()` bits are supplied.
pub(crate) fn xor_with_bits(data: &[u8], bits: &BitSequence) -> Vec<u8> {
    assert!(bits.len() >= data.len() * 8, "keystream too short");
    let key = bits.to_msb_bytes();
    data.iter().zip(key).map(|(d, k)| d ^ k).collect()
}

/// Encrypt or decrypt `data` under the keystream drawn from `cfg`.
pub fn vernam(data: &[u8], cfg: &GeneratorConfig) -> Result<Vec<u8>, GeneratorError> {
    let mut generator = Generator::new(*cfg)?;
    let keystream = generator.take_bits(data.len() * 8)?;
    Ok(xor_with_bits(data, &keystream))
}

/// Streaming form over arbitrary readers/writers; memory use is
/// independent of the message length.
pub fn vernam_io<R: Read, W: Write>(
    mut input: R,
    mut output: W,
    cfg: &GeneratorConfig,
) -> Result<u64, VernamIoError> {
    let mut generator = Generator::new(*cfg).map_err(VernamIoError::Generator)?;
    let mut buf = [0u8; 8192];
    let mut total = 0u64;
    loop {
        let read = input.read(&mut buf).map_err(VernamIoError::Io)?;
        if read == 0 {
            return Ok(total);
        }
        for byte in &mut buf[..read] {
            let mut key = 0u8;
            for _ in 0..8 {
                key = key << 1
                    | generator
                        .next_bit()
                        .map_err(|e: DivergenceError| VernamIoError::Generator(e.into()))?
                        as u8;
            }
            *byte ^= key;
        }
        output.write_all(&buf[..read]).map_err(VernamIoError::Io)?;
        total += read as u64;
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VernamIoError {
    #[error(transparent)]
    Generator(GeneratorError),
    #[error(transparent)]
    Io(io::Error),
}
