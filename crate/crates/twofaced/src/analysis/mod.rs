//! Bit-error-rate analysis: closed-form estimates, Monte Carlo simulation
//! and exhaustive verification oracles.

mod bounds;
mod oracle;

pub use bounds::{ber_bound_bsc, ber_bound_ec, binomial, hoeffding_tail, ln_binomial, optimize_l};
pub use oracle::{exact_ber, posterior_error_isolated};

use serde::Serialize;

use crate::bits::BitWord;
use crate::channel::{transmit_bsc, transmit_ec, ChannelKind, ChannelSpec};
use crate::codec::{decode_bsc, decode_ec, BranchCounts};
use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::process::sample_bernoulli;
use crate::rng::{Domain, Substream};
use crate::transform::scramble;

/// How the shared context word is chosen for simulation trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordPolicy {
    /// One fixed word for every trial.
    Explicit(BitWord),
    /// A fresh uniform word per trial, the model under which the scrambled
    /// process has exactly uniform short-word statistics.
    FreshPerTrial,
}

/// Full description of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub l: usize,
    pub p: f64,
    pub channel: ChannelSpec,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub w_policy: WordPolicy,
    /// Worker threads; results are identical for any value.
    pub workers: usize,
}

impl SimulationConfig {
    fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidParameter("memory length l must be >= 1".into()));
        }
        if !(self.p > 0.5 && self.p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "probability of zero p = {} must lie in (1/2, 1)",
                self.p
            )));
        }
        if self.n <= self.l {
            return Err(Error::InvalidParameter(format!(
                "word length n = {} must exceed l = {}",
                self.n, self.l
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trial count must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter("worker count must be >= 1".into()));
        }
        if let WordPolicy::Explicit(w) = &self.w_policy {
            if w.len() != self.l {
                return Err(Error::InvalidParameter(format!(
                    "context word length {} does not match l = {}",
                    w.len(),
                    self.l
                )));
            }
        }
        Ok(())
    }
}

/// Configuration echo embedded in every result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultParams {
    pub l: usize,
    pub w: Option<String>,
    pub w_policy: String,
    pub p: f64,
    pub n: usize,
}

/// Summed per-rule position counts over all trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BranchTotals {
    Ec { passthrough: u64, ml: u64, coin: u64 },
    Bsc { kept: u64, flipped: u64, tail: u64 },
}

/// Aggregated outcome of a Monte Carlo run. Serializes to the stable JSON
/// result schema; all randomness is pinned by `seed`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    pub params: ResultParams,
    pub channel: ChannelSpec,
    pub trials: u64,
    pub bit_errors: u64,
    pub total_bits: u64,
    pub ber: f64,
    pub ci95: f64,
    pub bound: f64,
    pub branch_totals: BranchTotals,
    pub seed: u64,
    /// Sum of squared per-trial error counts, for the standard error of the
    /// mean; not part of the serialized schema.
    #[serde(skip)]
    pub sq_trial_errors: u128,
}

impl SimulationResult {
    /// Standard error of the BER estimate from the per-trial sample
    /// variance. Zero when every trial saw the same error count.
    pub fn stderr_of_mean(&self) -> f64 {
        let t = self.trials as f64;
        if self.trials < 2 {
            return 0.0;
        }
        let sum = self.bit_errors as f64;
        let sumsq = self.sq_trial_errors as f64;
        let var = ((sumsq - sum * sum / t) / (t - 1.0)).max(0.0);
        let n = (self.total_bits / self.trials) as f64;
        (var / t).sqrt() / n
    }
}

#[derive(Default, Clone, Copy)]
struct Accumulator {
    bit_errors: u64,
    sq_trial_errors: u128,
    branch: [u64; 3],
}

impl Accumulator {
    fn absorb_trial(&mut self, errors: u64, counts: BranchCounts) {
        self.bit_errors += errors;
        self.sq_trial_errors += (errors as u128) * (errors as u128);
        match counts {
            BranchCounts::Ec { passthrough, ml, coin } => {
                self.branch[0] += passthrough as u64;
                self.branch[1] += ml as u64;
                self.branch[2] += coin as u64;
            }
            BranchCounts::Bsc { kept, flipped, tail } => {
                self.branch[0] += kept as u64;
                self.branch[1] += flipped as u64;
                self.branch[2] += tail as u64;
            }
        }
    }

    fn merge(&mut self, other: Accumulator) {
        self.bit_errors += other.bit_errors;
        self.sq_trial_errors += other.sq_trial_errors;
        for (a, b) in self.branch.iter_mut().zip(other.branch) {
            *a += b;
        }
    }
}

fn run_trial(config: &SimulationConfig, trial: u64) -> Result<(u64, BranchCounts)> {
    let seed = config.seed;
    let w = match &config.w_policy {
        WordPolicy::Explicit(w) => w.clone(),
        WordPolicy::FreshPerTrial => {
            let mut rng = Substream::derived(seed, Domain::Context, trial).rng();
            sample_bernoulli(config.l, 0.5, &mut rng)
        }
    };
    let params = CodeParams::new(config.l, w, config.p)?;
    let mut source_rng = Substream::derived(seed, Domain::Source, trial).rng();
    let x = sample_bernoulli(config.n, config.p, &mut source_rng);
    let v = scramble(&x, params.w());
    let channel_stream = Substream::derived(seed, Domain::Channel, trial);
    let report = match config.channel.kind {
        ChannelKind::Ec => {
            let vstar = transmit_ec(&v, config.channel.pi, &channel_stream);
            let coins = Substream::derived(seed, Domain::Decoder, trial);
            decode_ec(&vstar, &params, &coins)?
        }
        ChannelKind::Bsc => {
            let vstar = transmit_bsc(&v, config.channel.pi, &channel_stream);
            decode_bsc(&vstar, &params, config.channel.pi)?
        }
    };
    Ok((report.decoded.hamming_distance(&x) as u64, report.branches))
}

/// Runs the full pipeline `trials` times and aggregates. Deterministic
/// given the seed: per-trial substreams are addressed by trial index and
/// the merge is a sum, so the result is bit-identical for any worker count.
pub fn run_monte_carlo(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let bound = match config.channel.kind {
        ChannelKind::Ec => ber_bound_ec(config.l, config.p, config.channel.pi, config.n),
        ChannelKind::Bsc => ber_bound_bsc(config.l, config.p, config.channel.pi, config.n)?,
    };

    let workers = config.workers.min(config.trials as usize).max(1);
    let per_worker = config.trials.div_ceil(workers as u64);
    let mut total = Accumulator::default();
    let partials: Vec<Result<Accumulator>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|worker| {
                let lo = worker * per_worker;
                let hi = ((worker + 1) * per_worker).min(config.trials);
                scope.spawn(move || {
                    let mut acc = Accumulator::default();
                    for trial in lo..hi {
                        let (errors, counts) = run_trial(config, trial)?;
                        acc.absorb_trial(errors, counts);
                    }
                    Ok(acc)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for partial in partials {
        total.merge(partial?);
    }

    let total_bits = config.n as u64 * config.trials;
    let ber = total.bit_errors as f64 / total_bits as f64;
    let ci95 = (1.96 * (ber * (1.0 - ber) / total_bits as f64).sqrt()).max(1.0 / total_bits as f64);
    let branch_totals = match config.channel.kind {
        ChannelKind::Ec => BranchTotals::Ec {
            passthrough: total.branch[0],
            ml: total.branch[1],
            coin: total.branch[2],
        },
        ChannelKind::Bsc => BranchTotals::Bsc {
            kept: total.branch[0],
            flipped: total.branch[1],
            tail: total.branch[2],
        },
    };
    let (w_echo, w_policy) = match &config.w_policy {
        WordPolicy::Explicit(w) => (Some(w.to_string()), "explicit".to_string()),
        WordPolicy::FreshPerTrial => (None, "fresh-per-trial".to_string()),
    };
    Ok(SimulationResult {
        params: ResultParams {
            l: config.l,
            w: w_echo,
            w_policy,
            p: config.p,
            n: config.n,
        },
        channel: config.channel,
        trials: config.trials,
        bit_errors: total.bit_errors,
        total_bits,
        ber,
        ci95,
        bound,
        branch_totals,
        seed: config.seed,
        sq_trial_errors: total.sq_trial_errors,
    })
}
