//! On-disk bit stream formats.
//!
//! Three interchangeable encodings, all lossless:
//!
//! * **packed** — 14-byte header (magic `HNSQ`, version byte, format tag
//!   byte, bit count as little-endian u64) followed by the bits packed
//!   MSB-first, final partial byte zero-padded.
//! * **ascii** — one `'0'`/`'1'` character per bit, no header and no
//!   trailing newline, directly consumable by external statistical test
//!   suites that read ASCII bit streams.
//! * **csv** — `index,bit` header, then one `i,b` row per bit with a
//!   1-based index.
//!
//! [`read`] detects the format from the content: the packed magic, the
//! csv header line, or bare bit characters.

use crate::bits::BitSequence;
use std::io::{self, Read, Write};
use std::path::Path;
use thiserror::Error;

pub const MAGIC: [u8; 4] = *b"HNSQ";
pub const VERSION: u8 = 1;
const PACKED_TAG: u8 = 1;
const HEADER_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitFileFormat {
    Packed,
    Ascii,
    Csv,
}

impl BitFileFormat {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "packed" | "bin" | "binary" => Some(BitFileFormat::Packed),
            "ascii" | "txt" => Some(BitFileFormat::Ascii),
            "csv" => Some(BitFileFormat::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum BitFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("not a bit file: bad magic")]
    BadMagic,
    #[error("unsupported bit file version {0}")]
    UnsupportedVersion(u8),
    #[error("unsupported bit file format tag {0}")]
    UnsupportedTag(u8),
    #[error("truncated bit file: header says {expected_bytes} payload bytes, found {found_bytes}")]
    Truncated {
        expected_bytes: usize,
        found_bytes: usize,
    },
    #[error("trailing bytes after payload: expected {expected_bytes}, found {found_bytes}")]
    TrailingData {
        expected_bytes: usize,
        found_bytes: usize,
    },
    #[error("invalid character {found:?} at byte {at} (expected '0' or '1')")]
    InvalidAscii { found: char, at: usize },
    #[error("malformed csv bit file at line {line}: {reason}")]
    InvalidCsv { line: usize, reason: String },
}

pub fn write<W: Write>(
    out: &mut W,
    bits: &BitSequence,
    format: BitFileFormat,
) -> io::Result<()> {
    match format {
        BitFileFormat::Packed => {
            out.write_all(&MAGIC)?;
            out.write_all(&[VERSION, PACKED_TAG])?;
            out.write_all(&(bits.len() as u64).to_le_bytes())?;
            out.write_all(&bits.to_msb_bytes())
        }
        BitFileFormat::Ascii => out.write_all(bits.to_binary_string().as_bytes()),
        BitFileFormat::Csv => {
            let mut body = String::from("index,bit\n");
            for (i, bit) in bits.iter().enumerate() {
                body.push_str(&format!("{},{}\n", i + 1, bit as u8));
            }
            out.write_all(body.as_bytes())
        }
    }
}

pub fn write_to_path(
    path: &Path,
    bits: &BitSequence,
    format: BitFileFormat,
) -> io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    write(&mut file, bits, format)
}

/// Read a bit file in any of the three formats, detecting which one.
pub fn read<R: Read>(input: &mut R) -> Result<BitSequence, BitFileError> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    read_bytes(&data)
}

pub fn read_from_path(path: &Path) -> Result<BitSequence, BitFileError> {
    let data = std::fs::read(path)?;
    read_bytes(&data)
}

pub fn read_bytes(data: &[u8]) -> Result<BitSequence, BitFileError> {
    if data.starts_with(&MAGIC) {
        return read_packed(data);
    }
    if data.starts_with(b"index,bit") {
        return read_csv(data);
    }
    read_ascii(data)
}

fn read_packed(data: &[u8]) -> Result<BitSequence, BitFileError> {
    if data.len() < HEADER_LEN {
        return Err(BitFileError::Truncated {
            expected_bytes: HEADER_LEN,
            found_bytes: data.len(),
        });
    }
    if data[..4] != MAGIC {
        return Err(BitFileError::BadMagic);
    }
    if data[4] != VERSION {
        return Err(BitFileError::UnsupportedVersion(data[4]));
    }
    if data[5] != PACKED_TAG {
        return Err(BitFileError::UnsupportedTag(data[5]));
    }
    let bit_len = u64::from_le_bytes(data[6..14].try_into().unwrap()) as usize;
    let payload = &data[HEADER_LEN..];
    let expected_bytes = bit_len.div_ceil(8);
    if payload.len() < expected_bytes {
        return Err(BitFileError::Truncated {
            expected_bytes,
            found_bytes: payload.len(),
        });
    }
    if payload.len() > expected_bytes {
        return Err(BitFileError::TrailingData {
            expected_bytes,
            found_bytes: payload.len(),
        });
    }
    Ok(BitSequence::from_msb_bytes(payload, bit_len))
}

fn read_ascii(data: &[u8]) -> Result<BitSequence, BitFileError> {
    let mut bits = BitSequence::with_capacity(data.len());
    for (at, &byte) in data.iter().enumerate() {
        match byte {
            b'0' => bits.push(false),
            b'1' => bits.push(true),
            b' ' | b'\t' | b'\r' | b'\n' => {}
            other => {
                return Err(BitFileError::InvalidAscii {
                    found: other as char,
                    at,
                })
            }
        }
    }
    Ok(bits)
}

fn read_csv(data: &[u8]) -> Result<BitSequence, BitFileError> {
    let text = std::str::from_utf8(data).map_err(|_| BitFileError::InvalidCsv {
        line: 0,
        reason: "not utf-8".into(),
    })?;
    let mut bits = BitSequence::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            continue; // header, already matched
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| BitFileError::InvalidCsv {
            line: lineno + 1,
            reason: reason.into(),
        };
        let (index, bit) = line.split_once(',').ok_or_else(|| bad("missing comma"))?;
        let index: usize = index.trim().parse().map_err(|_| bad("bad index"))?;
        if index != bits.len() + 1 {
            return Err(bad("index out of order"));
        }
        match bit.trim() {
            "0" => bits.push(false),
            "1" => bits.push(true),
            _ => return Err(bad("bit must be 0 or 1")),
        }
    }
    Ok(bits)
}
