//! Seeded, reproducible channel simulators.
//!
//! Both channels corrupt symbols independently with probability `pi`,
//! drawing per-symbol randomness from a position-addressed substream, so the
//! output is a pure function of `(input, pi, stream)` no matter how or in
//! what order the symbols are evaluated.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::{Bit, BitWord};
use crate::error::{Error, Result};
use crate::rng::Substream;

/// A channel output symbol: a bit, or an erasure mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelSymbol {
    Known(Bit),
    Erased,
}

/// A received word over `{0, 1, *}`. Length always equals the transmitted
/// length; channels never insert or delete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    bits: BitWord,
    erased: BitWord,
}

impl ReceivedWord {
    /// A received word with no erasures.
    pub fn from_bits(bits: BitWord) -> ReceivedWord {
        let erased = BitWord::zeros(bits.len());
        ReceivedWord { bits, erased }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, index: usize) -> ChannelSymbol {
        if self.is_erased(index) {
            ChannelSymbol::Erased
        } else {
            ChannelSymbol::Known(self.bits.get(index))
        }
    }

    #[inline]
    pub fn is_erased(&self, index: usize) -> bool {
        self.erased.get(index) == Bit::One
    }

    /// The bit at a non-erased position. Panics if the position is erased.
    #[inline]
    pub fn bit(&self, index: usize) -> Bit {
        assert!(!self.is_erased(index), "position {index} is erased");
        self.bits.get(index)
    }

    pub fn erasure_count(&self) -> usize {
        self.erased.count(Bit::One)
    }

    pub fn erase(&mut self, index: usize) {
        self.erased.set(index, Bit::One);
        self.bits.set(index, Bit::Zero);
    }

    /// The underlying bits if nothing is erased.
    pub fn to_bitword(&self) -> Option<BitWord> {
        if self.erasure_count() == 0 {
            Some(self.bits.clone())
        } else {
            None
        }
    }
}

impl FromStr for ReceivedWord {
    type Err = Error;

    /// Parses received text: `'0'`, `'1'`, `'*'`, whitespace ignored.
    fn from_str(s: &str) -> Result<ReceivedWord> {
        let mut bits = BitWord::new();
        let mut erased = BitWord::new();
        for c in s.chars() {
            match c {
                '0' => {
                    bits.push(Bit::Zero);
                    erased.push(Bit::Zero);
                }
                '1' => {
                    bits.push(Bit::One);
                    erased.push(Bit::Zero);
                }
                '*' => {
                    bits.push(Bit::Zero);
                    erased.push(Bit::One);
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Format(format!("invalid received character {c:?}"))),
            }
        }
        Ok(ReceivedWord { bits, erased })
    }
}

impl fmt::Display for ReceivedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let c = match self.get(i) {
                ChannelSymbol::Erased => '*',
                ChannelSymbol::Known(b) => char::from(b),
            };
            f.write_fmt(format_args!("{c}"))?;
        }
        Ok(())
    }
}

/// Which channel corrupts the transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// Erasure channel: symbols are replaced by `*`.
    Ec,
    /// Binary symmetric channel: symbols are complemented.
    Bsc,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Ec => "ec",
            ChannelKind::Bsc => "bsc",
        })
    }
}

/// Channel kind plus per-symbol error probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub pi: f64,
}

impl ChannelSpec {
    /// Validates `0 <= pi < 1/2`.
    pub fn new(kind: ChannelKind, pi: f64) -> Result<ChannelSpec> {
        if !(0.0..0.5).contains(&pi) {
            return Err(Error::InvalidParameter(format!(
                "symbol error probability pi = {pi} must lie in [0, 1/2)"
            )));
        }
        Ok(ChannelSpec { kind, pi })
    }
}

/// Erasure channel: each symbol is independently erased with probability
/// `pi`, otherwise passed unchanged.
pub fn transmit_ec(v: &BitWord, pi: f64, stream: &Substream) -> ReceivedWord {
    assert!((0.0..0.5).contains(&pi), "pi = {pi} outside [0, 1/2)");
    let mut out = ReceivedWord::from_bits(v.clone());
    for i in 0..v.len() {
        if stream.unit_at(i) < pi {
            out.erase(i);
        }
    }
    out
}

/// Binary symmetric channel: each symbol is independently complemented with
/// probability `pi`.
pub fn transmit_bsc(v: &BitWord, pi: f64, stream: &Substream) -> BitWord {
    assert!((0.0..0.5).contains(&pi), "pi = {pi} outside [0, 1/2)");
    let mut out = v.clone();
    for i in 0..v.len() {
        if stream.unit_at(i) < pi {
            out.flip(i);
        }
    }
    out
}
