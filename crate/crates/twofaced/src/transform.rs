//! The scrambling transform and its inverse.
//!
//! `scramble` turns a memoryless bit stream into a sequence whose symbols
//! depend on the preceding `l` outputs: each output is the input symbol,
//! complemented whenever the parity of the last `l` outputs is odd. The
//! parity window is seeded with the shared context word `w`, which acts as a
//! virtual prefix and is never part of the transmitted sequence.
//!
//! `descramble` is the feed-forward inverse: it complements based on the
//! parity of the last `l` *input* symbols, so a corrupted symbol only
//! disturbs the output while it remains inside the window (positions
//! `i ..= i + l`). Both run in one pass with O(1) work per symbol.

use crate::bits::{Bit, BitWord};

/// Sliding parity over the last `l` symbols, seeded by the context word.
struct ParityWindow {
    ring: Vec<Bit>,
    head: usize,
    odd: bool,
}

impl ParityWindow {
    fn seeded(w: &BitWord) -> ParityWindow {
        let ring: Vec<Bit> = w.iter().collect();
        let odd = ring.iter().filter(|b| **b == Bit::One).count() % 2 == 1;
        ParityWindow { ring, head: 0, odd }
    }

    #[inline]
    fn parity_odd(&self) -> bool {
        self.odd
    }

    #[inline]
    fn push(&mut self, bit: Bit) {
        if self.ring.is_empty() {
            return;
        }
        let evicted = std::mem::replace(&mut self.ring[self.head], bit);
        self.head = (self.head + 1) % self.ring.len();
        self.odd ^= (evicted == Bit::One) ^ (bit == Bit::One);
    }
}

/// Scrambles `x` under context `w`; the memory length is `w.len()`.
pub fn scramble(x: &BitWord, w: &BitWord) -> BitWord {
    let mut window = ParityWindow::seeded(w);
    let mut v = BitWord::with_capacity(x.len());
    for xi in x.iter() {
        let vi = if window.parity_odd() { xi.complement() } else { xi };
        v.push(vi);
        window.push(vi);
    }
    v
}

/// Inverts [`scramble`] under the same context `w`.
pub fn descramble(v: &BitWord, w: &BitWord) -> BitWord {
    let mut window = ParityWindow::seeded(w);
    let mut u = BitWord::with_capacity(v.len());
    for vi in v.iter() {
        let ui = if window.parity_odd() { vi.complement() } else { vi };
        u.push(ui);
        window.push(vi);
    }
    u
}

/// Occurrences of `symbol` in `descramble(v, w)`.
pub fn symbol_count(v: &BitWord, w: &BitWord, symbol: Bit) -> usize {
    let mut window = ParityWindow::seeded(w);
    let mut count = 0;
    for vi in v.iter() {
        let ui = if window.parity_odd() { vi.complement() } else { vi };
        if ui == symbol {
            count += 1;
        }
        window.push(vi);
    }
    count
}

/// Zero count of the descrambled word: the decision statistic of both
/// decoders.
pub fn zero_count(v: &BitWord, w: &BitWord) -> usize {
    symbol_count(v, w, Bit::Zero)
}
