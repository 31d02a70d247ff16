//! Exhaustive small-instance verification oracles.
//!
//! These compute exact expectations by enumerating every source word and
//! every channel error pattern with its probability weight — no sampling.
//! They exist to cross-check the Monte Carlo estimator and the closed-form
//! estimates on instances small enough to enumerate.

use crate::bits::{Bit, BitWord};
use crate::channel::{ChannelKind, ChannelSpec, ReceivedWord};
use crate::codec::{decode_bsc, ec_decision_plan, EcDecision};
use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::process::build_transition_table;
use crate::transform::scramble;

/// Enumeration budget: `2^n` source words times `2^n` error patterns.
const MAX_ORACLE_N: usize = 12;
const MAX_ORACLE_L: usize = 3;

/// Exact expected bit error rate of the full pipeline
/// (encode, transmit, decode) for a small instance.
///
/// Coin-flip fills contribute their expectation analytically: a decoded
/// position whose descrambling window contains at least one fair coin is
/// wrong with probability exactly 1/2, independent of everything else in
/// the window.
pub fn exact_ber(params: &CodeParams, channel: &ChannelSpec, n: usize) -> Result<f64> {
    let l = params.l();
    if n > MAX_ORACLE_N || l > MAX_ORACLE_L {
        return Err(Error::InvalidParameter(format!(
            "enumeration budget exceeded: need n <= {MAX_ORACLE_N} and l <= {MAX_ORACLE_L}, \
             got n = {n}, l = {l}"
        )));
    }
    if n <= l {
        return Err(Error::InvalidParameter(format!(
            "need n > l, got n = {n}, l = {l}"
        )));
    }
    let p = params.p();
    let pi = channel.pi;
    // probability of a word by its count of ones / of an error pattern by weight
    let source_weight: Vec<f64> = (0..=n)
        .map(|ones| p.powi((n - ones) as i32) * (1.0 - p).powi(ones as i32))
        .collect();
    let noise_weight: Vec<f64> = (0..=n)
        .map(|hits| pi.powi(hits as i32) * (1.0 - pi).powi((n - hits) as i32))
        .collect();

    let mut expected_errors = 0.0;
    for x_idx in 0..(1u64 << n) {
        let x = BitWord::from_index(x_idx, n);
        let px = source_weight[x.count(Bit::One)];
        if px == 0.0 {
            continue;
        }
        let v = scramble(&x, params.w());
        for mask in 0..(1u32 << n) {
            let pm = noise_weight[mask.count_ones() as usize];
            if pm == 0.0 {
                continue;
            }
            let mismatches = match channel.kind {
                ChannelKind::Bsc => {
                    let mut vstar = v.clone();
                    for i in 0..n {
                        if mask >> i & 1 == 1 {
                            vstar.flip(i);
                        }
                    }
                    let report = decode_bsc(&vstar, params, pi)?;
                    report.decoded.hamming_distance(&x) as f64
                }
                ChannelKind::Ec => {
                    let mut vstar = ReceivedWord::from_bits(v.clone());
                    for i in 0..n {
                        if mask >> i & 1 == 1 {
                            vstar.erase(i);
                        }
                    }
                    expected_ec_mismatches(&vstar, &v, params)
                }
            };
            expected_errors += px * pm * mismatches;
        }
    }
    Ok(expected_errors / n as f64)
}

/// Expected number of decoded-word mismatches for one erasure pattern,
/// averaging over the decoder's coin flips analytically.
///
/// Let `d_i = v'_i xor v_i`. After descrambling, position `j` is wrong
/// exactly when `d` has odd parity over the window `max(0, j-l) ..= j`
/// (prefix positions agree by construction). Deterministic decisions fix
/// their `d_i`; a coin contributes an independent uniform bit, making any
/// window containing one wrong with probability 1/2.
fn expected_ec_mismatches(vstar: &ReceivedWord, v: &BitWord, params: &CodeParams) -> f64 {
    let l = params.l();
    let n = v.len();
    let mut diff = 0u32;
    let mut coins = 0u32;
    for (i, decision) in ec_decision_plan(vstar, params).into_iter().enumerate() {
        match decision {
            EcDecision::PassThrough(bit) | EcDecision::MaxLikelihood(bit) => {
                if bit != v.get(i) {
                    diff |= 1 << i;
                }
            }
            EcDecision::Coin => coins |= 1 << i,
        }
    }
    let mut expected = 0.0;
    for j in 0..n {
        let lo = j.saturating_sub(l);
        let window: u32 = (((1u64 << (j + 1)) - 1) & !((1u64 << lo) - 1)) as u32;
        if coins & window != 0 {
            expected += 0.5;
        } else if (diff & window).count_ones() % 2 == 1 {
            expected += 1.0;
        }
    }
    expected
}

/// Exact probability that the most-probable completion of a single erased
/// symbol is wrong, conditioned on the observed neighborhood.
///
/// `order` is the process memory; `order = 0` is the memoryless baseline.
/// The pattern must contain exactly one erasure, with at least `order`
/// observed symbols before it. Both hypotheses for the erased symbol are
/// weighted by the chain law and the smaller posterior is returned.
pub fn posterior_error_isolated(order: usize, p: f64, pattern: &ReceivedWord) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "probability p = {p} must lie in (0, 1)"
        )));
    }
    let erasures: Vec<usize> = (0..pattern.len()).filter(|&i| pattern.is_erased(i)).collect();
    let [k] = erasures.as_slice() else {
        return Err(Error::InvalidParameter(format!(
            "pattern must contain exactly one erasure, found {}",
            erasures.len()
        )));
    };
    let k = *k;
    if k < order {
        return Err(Error::InvalidParameter(format!(
            "erasure at position {k} needs {order} observed symbols before it"
        )));
    }
    if order == 0 {
        return Ok(p.min(1.0 - p));
    }
    let table = build_transition_table(order, p)?;
    let likelihood = |hypothesis: Bit| -> f64 {
        let symbol = |i: usize| if i == k { hypothesis } else { pattern.bit(i) };
        let mut ctx = 0usize;
        for i in 0..order {
            ctx = (ctx << 1) | usize::from(bool::from(symbol(i)));
        }
        let mask = (1usize << order) - 1;
        let mut prob = 1.0; // uniform context marginal cancels in the ratio
        for i in order..pattern.len() {
            let s = symbol(i);
            let p0 = table.prob_zero_by_index(ctx);
            prob *= if s == Bit::Zero { p0 } else { 1.0 - p0 };
            ctx = ((ctx << 1) | usize::from(bool::from(s))) & mask;
        }
        prob
    };
    let l0 = likelihood(Bit::Zero);
    let l1 = likelihood(Bit::One);
    Ok(l0.min(l1) / (l0 + l1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelKind;

    fn params(l: usize, w: &str, p: f64) -> CodeParams {
        CodeParams::new(l, w.parse().unwrap(), p).unwrap()
    }

    fn received(s: &str) -> ReceivedWord {
        s.parse().unwrap()
    }

    #[test]
    fn noiseless_erasure_channel_has_zero_error() {
        let spec = ChannelSpec::new(ChannelKind::Ec, 0.0).unwrap();
        let b = exact_ber(&params(1, "0", 0.9), &spec, 6).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = ChannelSpec::new(ChannelKind::Ec, 0.1).unwrap();
        assert!(exact_ber(&params(1, "0", 0.9), &spec, 13).is_err());
        assert!(exact_ber(&params(3, "000", 0.9), &spec, 3).is_err());
    }

    #[test]
    fn exact_ber_lies_in_unit_interval() {
        for kind in [ChannelKind::Ec, ChannelKind::Bsc] {
            let spec = ChannelSpec::new(kind, 0.2).unwrap();
            let b = exact_ber(&params(2, "01", 0.7), &spec, 6).unwrap();
            assert!((0.0..=1.0).contains(&b), "{kind:?}: {b}");
        }
    }

    #[test]
    fn exact_ber_ec_brute_force_tiny_instance() {
        // independent check with explicitly enumerated coin outcomes:
        // n = 2, l = 1 keeps the full enumeration tiny
        use crate::codec::decode_ec;
        use crate::rng::{Domain, Substream};
        let prm = params(1, "0", 0.8);
        let spec = ChannelSpec::new(ChannelKind::Ec, 0.25).unwrap();
        let n = 2;
        let oracle = exact_ber(&prm, &spec, n).unwrap();
        // Monte Carlo over everything, many trials, as a sanity reference
        let trials = 400_000u64;
        let mut err_sum = 0f64;
        for t in 0..trials {
            let src = Substream::derived(987, Domain::Source, t);
            let mut rng = src.rng();
            let x = crate::process::sample_bernoulli(n, prm.p(), &mut rng);
            let v = scramble(&x, prm.w());
            let vstar = crate::channel::transmit_ec(&v, spec.pi, &Substream::derived(987, Domain::Channel, t));
            let report = decode_ec(&vstar, &prm, &Substream::derived(987, Domain::Decoder, t)).unwrap();
            err_sum += report.decoded.hamming_distance(&x) as f64 / n as f64;
        }
        let mc = err_sum / trials as f64;
        // generous five-sigma-ish band
        assert!((mc - oracle).abs() < 0.005, "oracle={oracle} mc={mc}");
    }

    #[test]
    fn analytic_coin_average_matches_explicit_enumeration() {
        // second route to the coin expectation: instantiate every coin
        // assignment, descramble, and average the mismatch count
        use crate::codec::{ec_decision_plan, EcDecision};
        use crate::transform::descramble;
        let prm = params(2, "01", 0.8);
        let n = 6;
        for x_idx in 0..(1u64 << n) {
            let x = BitWord::from_index(x_idx, n);
            let v = scramble(&x, prm.w());
            for mask in 0..(1u32 << n) {
                let mut vstar = ReceivedWord::from_bits(v.clone());
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        vstar.erase(i);
                    }
                }
                let fast = expected_ec_mismatches(&vstar, &v, &prm);
                let plan = ec_decision_plan(&vstar, &prm);
                let coin_positions: Vec<usize> = plan
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| matches!(d, EcDecision::Coin))
                    .map(|(i, _)| i)
                    .collect();
                let mut total = 0u64;
                for coin_bits in 0..(1u32 << coin_positions.len()) {
                    let mut corrected = BitWord::with_capacity(n);
                    let mut coin_idx = 0;
                    for decision in &plan {
                        match decision {
                            EcDecision::PassThrough(b) | EcDecision::MaxLikelihood(b) => {
                                corrected.push(*b)
                            }
                            EcDecision::Coin => {
                                corrected.push(Bit::from(coin_bits >> coin_idx & 1 == 1));
                                coin_idx += 1;
                            }
                        }
                    }
                    total += descramble(&corrected, prm.w()).hamming_distance(&x) as u64;
                }
                let slow = total as f64 / (1u64 << coin_positions.len()) as f64;
                assert!(
                    (fast - slow).abs() < 1e-12,
                    "x={x} mask={mask:06b}: analytic {fast} vs enumerated {slow}"
                );
            }
        }
    }

    #[test]
    fn posterior_memoryless_baseline() {
        for p in [0.6, 0.75, 0.9, 0.99] {
            let e = posterior_error_isolated(0, p, &received("*")).unwrap();
            assert!((e - (1.0 - p)).abs() < 1e-15);
        }
    }

    #[test]
    fn posterior_memory_one_neighborhood() {
        for p in [0.6, 0.75, 0.9, 0.99] {
            let q = 1.0 - p;
            let expect = q * q / (p * p + q * q);
            let e = posterior_error_isolated(1, p, &received("0*0")).unwrap();
            assert!((e - expect).abs() < 1e-12, "p={p}");
            // symmetric neighborhood gives the same value
            let e = posterior_error_isolated(1, p, &received("1*1")).unwrap();
            assert!((e - expect).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn posterior_memory_two_neighborhood() {
        for p in [0.6f64, 0.75, 0.9, 0.99] {
            let q = 1.0 - p;
            let expect = q.powi(3) / (p.powi(3) + q.powi(3));
            let e = posterior_error_isolated(2, p, &received("10*10")).unwrap();
            assert!((e - expect).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn posterior_unconditional_memory_one_average_is_q() {
        // averaging the posterior error over the neighborhood distribution
        // recovers the memoryless error rate
        let p = 0.85f64;
        let table = build_transition_table(1, p).unwrap();
        let mut total = 0.0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                let mut pat = ReceivedWord::from_bits(BitWord::from_index(a << 2 | b, 3));
                // middle symbol erased; from_index packed it at position 1
                pat.erase(1);
                let err = posterior_error_isolated(1, p, &pat).unwrap();
                // weight of observing (a, _, b) = sum over the middle symbol
                let w: f64 = (0..2u64)
                    .map(|m| {
                        let g = BitWord::from_index(a << 2 | m << 1 | b, 3);
                        table.word_probability_exact(&g)
                    })
                    .sum();
                total += w * err;
            }
        }
        assert!((total - (1.0 - p)).abs() < 1e-12, "average = {total}");
    }

    #[test]
    fn posterior_rejects_malformed_patterns() {
        assert!(posterior_error_isolated(1, 0.9, &received("000")).is_err());
        assert!(posterior_error_isolated(1, 0.9, &received("*0*")).is_err());
        assert!(posterior_error_isolated(2, 0.9, &received("0*00")).is_err());
        assert!(posterior_error_isolated(1, 1.0, &received("0*0")).is_err());
    }
}
