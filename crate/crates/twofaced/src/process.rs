//! High-memory binary Markov sources with uniform short-word marginals.
//!
//! A table of order `l` assigns to every `l`-bit context the probability
//! that the next symbol is zero; every entry is either `p` or `q = 1 - p`.
//! Tables are built by the interleaving rule: the order-`(l+1)` row is the
//! order-`l` row followed by its `p <-> q` swap, over lexicographically
//! ordered contexts. Under a uniform initial context every window of up to
//! `l` symbols is exactly uniformly distributed, while the entropy rate
//! stays that of the underlying memoryless source.

use rand::Rng;

use crate::bits::{Bit, BitWord};
use crate::error::{Error, Result};

/// Transition table of a binary chain with memory `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    order: usize,
    p: f64,
    /// `prob_zero[c]` for contexts `c` in lexicographic order
    /// (first symbol = most significant bit).
    prob_zero: Vec<f64>,
}

/// Largest table order: `2^l` entries must stay addressable and cheap.
pub const MAX_TABLE_ORDER: usize = 24;

/// Builds the transition table of the given order.
pub fn build_transition_table(l: usize, p: f64) -> Result<TransitionTable> {
    if l == 0 || l > MAX_TABLE_ORDER {
        return Err(Error::InvalidParameter(format!(
            "table order {l} outside 1..={MAX_TABLE_ORDER}"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "probability p = {p} must lie in (0, 1)"
        )));
    }
    let q = 1.0 - p;
    let mut row = vec![p, q];
    for _ in 1..l {
        let swapped: Vec<f64> = row.iter().map(|&e| if e == p { q } else { p }).collect();
        row.extend(swapped);
    }
    Ok(TransitionTable {
        order: l,
        p,
        prob_zero: row,
    })
}

impl TransitionTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Probability of emitting zero after the given context word.
    pub fn prob_zero(&self, context: &BitWord) -> f64 {
        assert_eq!(context.len(), self.order, "context length mismatch");
        self.prob_zero_by_index(context.to_index() as usize)
    }

    /// Same, with the context in lexicographic index form.
    #[inline]
    pub fn prob_zero_by_index(&self, context: usize) -> f64 {
        self.prob_zero[context]
    }

    pub fn contexts(&self) -> usize {
        self.prob_zero.len()
    }

    /// Exact probability of observing the window `g` when the chain starts
    /// from the uniform context distribution. Computed by summing over all
    /// `2^l` initial contexts; no sampling involved.
    pub fn word_probability_exact(&self, g: &BitWord) -> f64 {
        assert!(!g.is_empty(), "empty window");
        let l = self.order;
        let mask = (1usize << l) - 1;
        let uniform = 1.0 / (1u64 << l) as f64;
        let mut total = 0.0;
        for start in 0..self.prob_zero.len() {
            let mut ctx = start;
            let mut prob = uniform;
            for bit in g.iter() {
                let p0 = self.prob_zero[ctx];
                prob *= match bit {
                    Bit::Zero => p0,
                    Bit::One => 1.0 - p0,
                };
                ctx = ((ctx << 1) | usize::from(bool::from(bit))) & mask;
            }
            total += prob;
        }
        total
    }

    /// Draws `n` symbols: the initial context uniform, then one chain step
    /// per symbol.
    pub fn sample(&self, n: usize, rng: &mut impl Rng) -> BitWord {
        let mask = (1usize << self.order) - 1;
        let mut ctx = (rng.random::<u64>() as usize) & mask;
        let mut out = BitWord::with_capacity(n);
        for _ in 0..n {
            let bit = if rng.random::<f64>() < self.prob_zero[ctx] {
                Bit::Zero
            } else {
                Bit::One
            };
            out.push(bit);
            ctx = ((ctx << 1) | usize::from(bool::from(bit))) & mask;
        }
        out
    }
}

/// `n` independent symbols, each zero with probability `p`.
pub fn sample_bernoulli(n: usize, p: f64, rng: &mut impl Rng) -> BitWord {
    (0..n)
        .map(|_| {
            if rng.random::<f64>() < p {
                Bit::Zero
            } else {
                Bit::One
            }
        })
        .collect()
}

/// See [`TransitionTable::sample`].
pub fn sample_two_faced(table: &TransitionTable, n: usize, rng: &mut impl Rng) -> BitWord {
    table.sample(n, rng)
}

/// Entropy per symbol of the memoryless source, in bits:
/// `-(p log2 p + q log2 q)`.
pub fn entropy_rate(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
    let q = 1.0 - p;
    -(p * p.log2() + q * q.log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Domain, Substream};
    use crate::transform::scramble;

    fn word(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn order_one_table() {
        let (p, q) = (0.9, 1.0 - 0.9);
        let t = build_transition_table(1, p).unwrap();
        assert_eq!(t.prob_zero(&word("0")), p);
        assert_eq!(t.prob_zero(&word("1")), q);
    }

    #[test]
    fn order_two_table() {
        let (p, q) = (0.8, 1.0 - 0.8);
        let t = build_transition_table(2, p).unwrap();
        assert_eq!(t.prob_zero(&word("00")), p);
        assert_eq!(t.prob_zero(&word("01")), q);
        assert_eq!(t.prob_zero(&word("10")), q);
        assert_eq!(t.prob_zero(&word("11")), p);
    }

    #[test]
    fn order_three_table() {
        let (p, q) = (0.9, 1.0 - 0.9);
        let t = build_transition_table(3, p).unwrap();
        // row of order 3: p q q p q p p q over 000..111
        let expect = [p, q, q, p, q, p, p, q];
        for (ctx, e) in expect.iter().enumerate() {
            assert_eq!(t.prob_zero_by_index(ctx), *e, "context {ctx:03b}");
        }
    }

    #[test]
    fn entry_is_p_iff_context_parity_even() {
        // independent route to the same table: the parity of the context
        // decides whether the next symbol is the source symbol or its
        // complement
        let (p, q) = (0.7, 1.0 - 0.7);
        for l in 1..=8 {
            let t = build_transition_table(l, p).unwrap();
            for ctx in 0..t.contexts() {
                let expect = if ctx.count_ones() % 2 == 0 { p } else { q };
                assert_eq!(t.prob_zero_by_index(ctx), expect);
            }
        }
    }

    #[test]
    fn restriction_reproduces_lower_order_and_swap() {
        let (p, q) = (0.85, 1.0 - 0.85);
        for l in 1..=7 {
            let t = build_transition_table(l, p).unwrap();
            let t1 = build_transition_table(l + 1, p).unwrap();
            let half = t.contexts();
            for ctx in 0..half {
                assert_eq!(t1.prob_zero_by_index(ctx), t.prob_zero_by_index(ctx));
                let swapped = if t.prob_zero_by_index(ctx) == p { q } else { p };
                assert_eq!(t1.prob_zero_by_index(half + ctx), swapped);
            }
        }
    }

    #[test]
    fn uniform_context_distribution_is_stationary() {
        // for every successor context the two incoming transition
        // probabilities sum to 1
        for l in 1..=8 {
            let t = build_transition_table(l, 0.9).unwrap();
            let m = t.contexts();
            for succ in 0..m {
                let new_bit = succ & 1;
                let stem = succ >> 1; // predecessor minus its oldest symbol
                let pred0 = stem; // oldest symbol 0
                let pred1 = stem | (m >> 1); // oldest symbol 1
                let step = |pred: usize| {
                    let p0 = t.prob_zero_by_index(pred);
                    if new_bit == 0 {
                        p0
                    } else {
                        1.0 - p0
                    }
                };
                assert!((step(pred0) + step(pred1) - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn short_windows_are_exactly_uniform() {
        for l in 1..=8 {
            let t = build_transition_table(l, 0.9).unwrap();
            for r in 1..=l {
                let expect = 1.0 / (1u64 << r) as f64;
                for g in 0..(1u64 << r) {
                    let w = BitWord::from_index(g, r);
                    assert!(
                        (t.word_probability_exact(&w) - expect).abs() < 1e-12,
                        "l={l} g={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn window_probability_beyond_memory() {
        // order 1, p = 0.9: P(00) = 1/2 * 0.9
        let t = build_transition_table(1, 0.9).unwrap();
        assert!((t.word_probability_exact(&word("00")) - 0.45).abs() < 1e-15);
        let t2 = build_transition_table(2, 0.9).unwrap();
        assert!((t2.word_probability_exact(&word("01")) - 0.25).abs() < 1e-15);
        let t3 = build_transition_table(3, 0.9).unwrap();
        assert!((t3.word_probability_exact(&word("0")) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn all_window_probabilities_sum_to_one() {
        let t = build_transition_table(3, 0.7).unwrap();
        for r in 1..=6 {
            let total: f64 = (0..(1u64 << r))
                .map(|g| t.word_probability_exact(&BitWord::from_index(g, r)))
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_is_deterministic_given_seed() {
        let s = Substream::derived(11, Domain::Source, 0);
        let a = sample_bernoulli(1000, 0.9, &mut s.rng());
        let b = sample_bernoulli(1000, 0.9, &mut s.rng());
        assert_eq!(a, b);
    }

    #[test]
    fn bernoulli_zero_frequency_within_five_sigma() {
        let n = 100_000;
        let p = 0.9;
        let s = Substream::derived(123, Domain::Source, 0);
        let x = sample_bernoulli(n, p, &mut s.rng());
        let freq = x.count_zeros() as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((freq - p).abs() < 5.0 * sigma, "freq={freq}");
    }

    #[test]
    fn bernoulli_near_degenerate() {
        let s = Substream::derived(5, Domain::Source, 0);
        let x = sample_bernoulli(2000, 1.0 - 1e-9, &mut s.rng());
        assert!(x.count_zeros() >= 1999);
    }

    #[test]
    fn chain_sample_conditional_frequencies() {
        let t = build_transition_table(1, 0.9).unwrap();
        let s = Substream::derived(77, Domain::Source, 1);
        let v = t.sample(200_000, &mut s.rng());
        let mut after = [[0u64; 2]; 2];
        for i in 1..v.len() {
            let prev = usize::from(bool::from(v.get(i - 1)));
            let cur = usize::from(bool::from(v.get(i)));
            after[prev][cur] += 1;
        }
        let p00 = after[0][0] as f64 / (after[0][0] + after[0][1]) as f64;
        let p10 = after[1][0] as f64 / (after[1][0] + after[1][1]) as f64;
        assert!((p00 - 0.9).abs() < 0.01, "P(0 after 0) = {p00}");
        assert!((p10 - 0.1).abs() < 0.01, "P(0 after 1) = {p10}");
    }

    #[test]
    fn chain_sample_short_window_frequencies() {
        // r-word frequencies approach 2^-r for r <= l
        let t = build_transition_table(3, 0.9).unwrap();
        let s = Substream::derived(99, Domain::Source, 2);
        let v = t.sample(300_000, &mut s.rng());
        let r = 2;
        let mut counts = [0u64; 4];
        for i in 0..v.len() - r + 1 {
            let idx = (usize::from(bool::from(v.get(i))) << 1) | usize::from(bool::from(v.get(i + 1)));
            counts[idx] += 1;
        }
        let total: u64 = counts.iter().sum();
        for c in counts {
            let f = c as f64 / total as f64;
            assert!((f - 0.25).abs() < 0.01, "{counts:?}");
        }
    }

    #[test]
    fn chain_matches_scramble_of_bernoulli_in_distribution() {
        // same first-word statistics from the chain and from scrambling a
        // memoryless source under a fresh uniform context
        let l = 3;
        let r = 3;
        let p = 0.8;
        let t = build_transition_table(l, p).unwrap();
        let trials = 60_000;
        let mut chain_counts = vec![0u64; 1 << r];
        let mut scr_counts = vec![0u64; 1 << r];
        let mut rng_a = Substream::derived(1234, Domain::Source, 0).rng();
        let mut rng_b = Substream::derived(1234, Domain::Source, 1).rng();
        let mut rng_w = Substream::derived(1234, Domain::Context, 0).rng();
        for _ in 0..trials {
            let v = t.sample(r, &mut rng_a);
            chain_counts[v.to_index() as usize] += 1;
            let w: BitWord = (0..l).map(|_| Bit::from(rng_w.random::<bool>())).collect();
            let x = sample_bernoulli(r, p, &mut rng_b);
            let v2 = scramble(&x, &w);
            scr_counts[v2.to_index() as usize] += 1;
        }
        for g in 0..(1usize << r) {
            let fa = chain_counts[g] as f64 / trials as f64;
            let fb = scr_counts[g] as f64 / trials as f64;
            // both are ~ 2^-r; three combined standard errors apart at most
            let sigma = (0.125 * 0.875 / trials as f64).sqrt();
            assert!((fa - fb).abs() < 6.0 * sigma, "g={g:03b} fa={fa} fb={fb}");
        }
    }

    #[test]
    fn entropy_values() {
        assert!((entropy_rate(0.5) - 1.0).abs() < 1e-15);
        assert!((entropy_rate(0.9) - 0.4689955935892812).abs() < 1e-12);
        assert!(entropy_rate(1.0 - 1e-9) < 1e-7);
        // symmetric
        assert!((entropy_rate(0.3) - entropy_rate(0.7)).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_orders_and_probabilities() {
        assert!(build_transition_table(0, 0.9).is_err());
        assert!(build_transition_table(25, 0.9).is_err());
        assert!(build_transition_table(2, 0.0).is_err());
        assert!(build_transition_table(2, 1.0).is_err());
    }
}
