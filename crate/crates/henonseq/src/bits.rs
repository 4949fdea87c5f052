//! Packed bit sequences.
//!
//! Bits live LSB-first inside `u64` words; unused high bits of the last
//! word are always zero so whole-word operations (popcount, xor) need no
//! masking at the call site.

use std::fmt;

/// An ordered, length-counted sequence of bits with packed storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSequence {
    len: usize,
    words: Vec<u64>,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitSequence {
            len: 0,
            words: Vec::with_capacity(bits.div_ceil(64)),
        }
    }

    /// Number of bits in the sequence.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        let (w, b) = (self.len / 64, self.len % 64);
        if w == self.words.len() {
            self.words.push(0);
        }
        if bit {
            self.words[w] |= 1u64 << b;
        }
        self.len += 1;
    }

    /// Bit at position `i` (0-based). Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range 0..{}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Backing words, LSB-first; tail bits beyond `len` are zero.
    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// Number of positions at which `self` and `other` differ.
    /// Panics if the lengths differ.
    pub fn hamming_distance(&self, other: &BitSequence) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Copy of `len` bits starting at `start`.
    pub fn window(&self, start: usize, len: usize) -> BitSequence {
        assert!(start + len <= self.len, "window out of range");
        (start..start + len).map(|i| self.get(i)).collect()
    }

    /// Bitwise complement of the same length.
    pub fn complement(&self) -> BitSequence {
        let mut out = BitSequence {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// Cyclic right shift: output bit `i` is input bit `(i - j) mod len`.
    pub fn rotate_right(&self, j: usize) -> BitSequence {
        if self.len == 0 {
            return BitSequence::new();
        }
        let j = j % self.len;
        (0..self.len)
            .map(|i| self.get((i + self.len - j) % self.len))
            .collect()
    }

    /// Pack into bytes, first bit into the most significant bit of the
    /// first byte; the final partial byte is zero-padded at the low end.
    pub fn to_msb_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in 0..self.len {
            if self.get(i) {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    /// Inverse of [`to_msb_bytes`](Self::to_msb_bytes); reads `bit_len`
    /// bits from `bytes`. Panics if `bytes` is too short.
    pub fn from_msb_bytes(bytes: &[u8], bit_len: usize) -> BitSequence {
        assert!(bytes.len() * 8 >= bit_len, "byte slice too short");
        (0..bit_len)
            .map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0)
            .collect()
    }

    /// Parse a string of '0'/'1' characters. Panics on other characters.
    pub fn from_binary_str(s: &str) -> BitSequence {
        s.chars()
            .map(|c| match c {
                '0' => false,
                '1' => true,
                other => panic!("invalid bit character {other:?}"),
            })
            .collect()
    }

    pub fn to_binary_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    fn mask_tail(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        // Drop any fully unused trailing words so Eq/Hash stay structural.
        self.words.truncate(self.len.div_ceil(64));
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut seq = BitSequence::new();
        for bit in iter {
            seq.push(bit);
        }
        seq
    }
}

impl Extend<bool> for BitSequence {
    fn extend<I: IntoIterator<Item = bool>>(&mut self, iter: I) {
        for bit in iter {
            self.push(bit);
        }
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "BitSequence({})", self.to_binary_string())
        } else {
            write!(
                f,
                "BitSequence({}… len={})",
                self.window(0, 64).to_binary_string(),
                self.len
            )
        }
    }
}
