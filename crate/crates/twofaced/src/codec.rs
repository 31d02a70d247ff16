//! The error-correcting decoders for the erasure and binary symmetric
//! channels.
//!
//! Decoding is a two-step procedure. First the received word `v*` is
//! processed position by position into a corrected word `v'`; every decision
//! reads only `v*` (plus the shared context word `w` acting as a virtual,
//! never-erased prefix), so the result does not depend on processing order.
//! Then `v'` is descrambled into the decoded word `x'`.
//!
//! The decision statistic at position `i` is `nu`: the number of zeros in
//! the descrambled window of `l + 1` symbols starting at `i`, taken under
//! the `l` received symbols before `i` as context. For the erasure channel
//! the window hypothesizes a `1` at the erased position and the
//! maximum-likelihood choice reduces to the exact integer test
//! `2 * nu >= l + 1`. For the binary symmetric channel the received symbol
//! is kept when `nu` reaches the threshold [`BscThreshold`], and complemented
//! otherwise.

use serde::Serialize;

use crate::bits::{Bit, BitWord};
use crate::channel::ReceivedWord;
use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::rng::Substream;
use crate::transform::{descramble, scramble, zero_count};

/// How many positions each decoder rule handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BranchCounts {
    /// Erasure channel: non-erased pass-through, maximum-likelihood filled,
    /// coin-flip filled.
    Ec {
        passthrough: usize,
        ml: usize,
        coin: usize,
    },
    /// Binary symmetric channel: kept, complemented, tail pass-through.
    Bsc {
        kept: usize,
        flipped: usize,
        tail: usize,
    },
}

impl BranchCounts {
    /// Total positions handled; always the word length.
    pub fn total(&self) -> usize {
        match *self {
            BranchCounts::Ec { passthrough, ml, coin } => passthrough + ml + coin,
            BranchCounts::Bsc { kept, flipped, tail } => kept + flipped + tail,
        }
    }
}

/// Outcome of a decode: the corrected channel word, the decoded source word,
/// and per-rule position counts.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeReport {
    pub corrected: BitWord,
    pub decoded: BitWord,
    pub branches: BranchCounts,
}

/// Keep/flip threshold for the binary symmetric channel decoder: the minimal
/// zero count at which keeping the received symbol is at least as likely as
/// a channel flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BscThreshold {
    delta: usize,
}

impl BscThreshold {
    pub fn delta(&self) -> usize {
        self.delta
    }
}

/// Tolerance for the threshold inequality, evaluated in log space; absorbs
/// rounding of decimal parameters at exact likelihood ties.
const DELTA_LOG_TOLERANCE: f64 = 1e-12;

/// Minimal `s` in `1..=l+1` with
/// `(1 - pi) * p^s * q^(l+1-s) >= pi * q^s * p^(l+1-s)`,
/// computed through the equivalent form
/// `(2s - (l+1)) * ln(p/q) >= ln(pi / (1 - pi))`.
pub fn compute_delta(l: usize, p: f64, pi: f64) -> Result<BscThreshold> {
    if l == 0 {
        return Err(Error::InvalidParameter("memory length l must be >= 1".into()));
    }
    if !(p > 0.5 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "probability of zero p = {p} must lie in (1/2, 1)"
        )));
    }
    if !(0.0..0.5).contains(&pi) {
        return Err(Error::InvalidParameter(format!(
            "channel error probability pi = {pi} must lie in [0, 1/2)"
        )));
    }
    let log_ratio = (p / (1.0 - p)).ln();
    let rhs = (pi / (1.0 - pi)).ln();
    for s in 1..=(l + 1) {
        let lhs = (2.0 * s as f64 - (l as f64 + 1.0)) * log_ratio;
        if lhs >= rhs - DELTA_LOG_TOLERANCE {
            return Ok(BscThreshold { delta: s });
        }
    }
    // Unreachable for in-domain parameters: s = l + 1 always satisfies the
    // inequality when p > 1/2 and pi < 1/2.
    Err(Error::Config(format!(
        "no keep threshold exists for l = {l}, p = {p}, pi = {pi}; \
         the decoder would flip unconditionally"
    )))
}

/// Extended view of a received word with the context word as virtual prefix:
/// index `e` in `0..l` reads `w`, index `l + j` reads position `j` of `v*`.
struct Extended<'a> {
    w: &'a BitWord,
    word: &'a ReceivedWord,
}

impl Extended<'_> {
    #[inline]
    fn erased(&self, e: usize) -> bool {
        let l = self.w.len();
        e >= l && self.word.is_erased(e - l)
    }

    #[inline]
    fn bit(&self, e: usize) -> Bit {
        let l = self.w.len();
        if e < l {
            self.w.get(e)
        } else {
            self.word.bit(e - l)
        }
    }
}

/// Per-position decision of the erasure-channel decoder, before any coin is
/// drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EcDecision {
    /// Not erased: copy the received symbol.
    PassThrough(Bit),
    /// Erased with a fully observed window: maximum-likelihood fill.
    MaxLikelihood(Bit),
    /// Erased with the window incomplete or partly erased: fair coin.
    Coin,
}

/// Whether position `i` (0-based) qualifies for the maximum-likelihood rule:
/// the `l` symbols before `i` and the `l` symbols after `i` must all be
/// non-erased, and the lookahead must fit inside the word.
fn ec_window_observed(ext: &Extended<'_>, l: usize, n: usize, i: usize) -> bool {
    if i + l >= n {
        return false;
    }
    // context occupies extended indices i..i+l-1, lookahead i+l+1..i+2l
    for e in i..(i + l) {
        if ext.erased(e) {
            return false;
        }
    }
    for e in (i + l + 1)..=(i + 2 * l) {
        if ext.erased(e) {
            return false;
        }
    }
    true
}

/// Maximum-likelihood fill value for an erased position with a fully
/// observed window: descramble `(1, lookahead)` under the observed context,
/// count zeros, and choose `1` exactly when `2 * nu >= l + 1` (ties go
/// to `1`).
#[allow(clippy::int_plus_one)] // keep the decision rule in its defining form
fn ec_ml_value(ext: &Extended<'_>, l: usize, i: usize) -> Bit {
    let context: BitWord = (i..(i + l)).map(|e| ext.bit(e)).collect();
    let mut candidate = BitWord::with_capacity(l + 1);
    candidate.push(Bit::One);
    for e in (i + l + 1)..=(i + 2 * l) {
        candidate.push(ext.bit(e));
    }
    let nu = zero_count(&candidate, &context);
    if 2 * nu >= l + 1 {
        Bit::One
    } else {
        Bit::Zero
    }
}

/// The deterministic part of an erasure-channel decode: every position is
/// either fixed now or left to a fair coin. All decisions read only `v*`
/// and the prefix `w`.
pub(crate) fn ec_decision_plan(vstar: &ReceivedWord, params: &CodeParams) -> Vec<EcDecision> {
    let l = params.l();
    let n = vstar.len();
    let ext = Extended {
        w: params.w(),
        word: vstar,
    };
    (0..n)
        .map(|i| {
            if !ext.erased(l + i) {
                EcDecision::PassThrough(vstar.bit(i))
            } else if ec_window_observed(&ext, l, n, i) {
                EcDecision::MaxLikelihood(ec_ml_value(&ext, l, i))
            } else {
                EcDecision::Coin
            }
        })
        .collect()
}

/// Decodes an erasure-channel word. Coin flips are drawn from the given
/// substream addressed by position, so the output is reproducible and
/// independent of processing order.
pub fn decode_ec(
    vstar: &ReceivedWord,
    params: &CodeParams,
    coins: &Substream,
) -> Result<DecodeReport> {
    let l = params.l();
    let n = vstar.len();
    if n <= l {
        return Err(Error::InvalidParameter(format!(
            "received length {n} must exceed memory length {l}"
        )));
    }
    let (mut passthrough, mut ml, mut coin) = (0, 0, 0);
    let mut corrected = BitWord::with_capacity(n);
    for (i, decision) in ec_decision_plan(vstar, params).into_iter().enumerate() {
        let value = match decision {
            EcDecision::PassThrough(b) => {
                passthrough += 1;
                b
            }
            EcDecision::MaxLikelihood(b) => {
                ml += 1;
                b
            }
            EcDecision::Coin => {
                coin += 1;
                coins.bit_at(i)
            }
        };
        corrected.push(value);
    }
    let decoded = descramble(&corrected, params.w());
    Ok(DecodeReport {
        corrected,
        decoded,
        branches: BranchCounts::Ec { passthrough, ml, coin },
    })
}

/// Zero count of the descrambled window `v*_i..v*_{i+l}` under the context
/// `v*_{i-l}..v*_{i-1}`, positions 0-based, prefix from `w`. Equivalent to
/// `zero_count(window, context)` but allocation-free; this is the inner loop
/// of the whole simulator.
pub(crate) fn bsc_window_statistic(vstar: &BitWord, w: &BitWord, i: usize) -> usize {
    let l = w.len();
    let bit = |e: usize| if e < l { w.get(e) } else { vstar.get(e - l) };
    let mut odd = false;
    for e in i..(i + l) {
        odd ^= bit(e) == Bit::One;
    }
    let mut zeros = 0;
    for e in (i + l)..=(i + 2 * l) {
        let vi = bit(e);
        let ui = if odd { vi.complement() } else { vi };
        if ui == Bit::Zero {
            zeros += 1;
        }
        odd ^= (vi == Bit::One) ^ (bit(e - l) == Bit::One);
    }
    zeros
}

/// Decodes a binary-symmetric-channel word: positions `0..n-l` keep the
/// received symbol exactly when the window statistic reaches the threshold,
/// the trailing `l` positions pass through. All statistics read `v*` only.
pub fn decode_bsc(vstar: &BitWord, params: &CodeParams, pi: f64) -> Result<DecodeReport> {
    let l = params.l();
    let n = vstar.len();
    if n <= l {
        return Err(Error::InvalidParameter(format!(
            "received length {n} must exceed memory length {l}"
        )));
    }
    let threshold = compute_delta(l, params.p(), pi)?;
    let (mut kept, mut flipped, mut tail) = (0, 0, 0);
    let mut corrected = BitWord::with_capacity(n);
    for i in 0..n {
        if i < n - l {
            let nu = bsc_window_statistic(vstar, params.w(), i);
            if nu >= threshold.delta() {
                kept += 1;
                corrected.push(vstar.get(i));
            } else {
                flipped += 1;
                corrected.push(vstar.get(i).complement());
            }
        } else {
            tail += 1;
            corrected.push(vstar.get(i));
        }
    }
    let decoded = descramble(&corrected, params.w());
    Ok(DecodeReport {
        corrected,
        decoded,
        branches: BranchCounts::Bsc { kept, flipped, tail },
    })
}

/// Sender-side encoding: the scrambling transform under the shared context.
pub fn encode(x: &BitWord, params: &CodeParams) -> BitWord {
    scramble(x, params.w())
}
