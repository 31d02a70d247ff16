//! Binary symbols and packed bit sequences.
//!
//! [`BitWord`] is the workhorse type for source words, scrambled words and
//! shared context words. Bits are stored packed, 64 per block, and indexed
//! from zero. The on-disk text format is one ASCII character per bit
//! (`'0'`/`'1'`) with all whitespace ignored.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single binary symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    #[inline]
    pub fn complement(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Bit::Zero
    }

    #[inline]
    pub fn xor(self, other: Bit) -> Bit {
        if self == other {
            Bit::Zero
        } else {
            Bit::One
        }
    }
}

impl From<bool> for Bit {
    /// `true` maps to `One`.
    #[inline]
    fn from(b: bool) -> Bit {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl From<Bit> for bool {
    #[inline]
    fn from(b: Bit) -> bool {
        b == Bit::One
    }
}

impl From<Bit> for char {
    fn from(b: Bit) -> char {
        match b {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

/// A finite binary sequence, packed 64 bits per block.
///
/// The blocks invariant: bits at positions `>= len` in the last block are
/// always zero, so equality and hashing work on the raw blocks.
#[derive(Debug, Default, Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    blocks: Vec<u64>,
    len: usize,
}

impl BitWord {
    pub fn new() -> BitWord {
        BitWord::default()
    }

    pub fn with_capacity(bits: usize) -> BitWord {
        BitWord {
            blocks: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// All-zero word of the given length.
    pub fn zeros(len: usize) -> BitWord {
        BitWord {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> Bit {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        Bit::from((self.blocks[index >> 6] >> (index & 63)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, index: usize, bit: Bit) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index & 63);
        match bit {
            Bit::One => self.blocks[index >> 6] |= mask,
            Bit::Zero => self.blocks[index >> 6] &= !mask,
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.blocks[index >> 6] ^= 1u64 << (index & 63);
    }

    #[inline]
    pub fn push(&mut self, bit: Bit) {
        if self.len & 63 == 0 {
            self.blocks.push(0);
        }
        if bit == Bit::One {
            let i = self.len;
            self.blocks[i >> 6] |= 1u64 << (i & 63);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = Bit> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of positions holding `bit`.
    pub fn count(&self, bit: Bit) -> usize {
        let ones: usize = self.blocks.iter().map(|b| b.count_ones() as usize).sum();
        match bit {
            Bit::One => ones,
            Bit::Zero => self.len - ones,
        }
    }

    pub fn count_zeros(&self) -> usize {
        self.count(Bit::Zero)
    }

    /// Positions where `self` and `other` differ. Panics on length mismatch.
    pub fn hamming_distance(&self, other: &BitWord) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Interprets `value` as a word of length `len`, first symbol = most
    /// significant bit, matching lexicographic enumeration of words.
    pub fn from_index(value: u64, len: usize) -> BitWord {
        assert!(len <= 64);
        let mut w = BitWord::with_capacity(len);
        for k in 0..len {
            w.push(Bit::from((value >> (len - 1 - k)) & 1 == 1));
        }
        w
    }

    /// Inverse of [`BitWord::from_index`]; requires `len <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "word too long for index form");
        let mut v = 0u64;
        for bit in self.iter() {
            v = (v << 1) | u64::from(bool::from(bit));
        }
        v
    }

    pub fn from_bits(bits: &[Bit]) -> BitWord {
        bits.iter().copied().collect()
    }
}

impl FromIterator<Bit> for BitWord {
    fn from_iter<T: IntoIterator<Item = Bit>>(iter: T) -> BitWord {
        let iter = iter.into_iter();
        let mut w = BitWord::with_capacity(iter.size_hint().0);
        for b in iter {
            w.push(b);
        }
        w
    }
}

impl FromStr for BitWord {
    type Err = Error;

    /// Parses bit text: `'0'`/`'1'`, whitespace ignored.
    fn from_str(s: &str) -> Result<BitWord> {
        let mut w = BitWord::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => w.push(Bit::Zero),
                '1' => w.push(Bit::One),
                c if c.is_whitespace() => {}
                c => return Err(Error::Format(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_fmt(format_args!("{}", char::from(bit)))?;
        }
        Ok(())
    }
}
