//! Error correction by scrambling instead of redundancy.
//!
//! A memoryless bit stream is scrambled into a process with long-range
//! symbol interdependence, transmitted over a noisy channel, and the
//! interdependence is then used to repair channel damage before the inverse
//! transform recovers the source. Encoding and decoding are single-pass
//! with constant work per symbol.
//!
//! The crate is organized around the pipeline:
//!
//! - [`transform`]: the scrambling map, its feed-forward inverse, and the
//!   zero-count statistic both decoders rely on ([`process`] holds the
//!   matching chain model: transition tables, exact window probabilities,
//!   samplers).
//! - [`channel`]: seeded erasure-channel and binary-symmetric-channel
//!   simulators.
//! - [`codec`]: the decoders, the keep/flip threshold, and decode reports.
//! - [`analysis`]: closed-form bit-error-rate estimates, a deterministic
//!   parallel Monte Carlo harness, and exhaustive small-instance oracles.
//!
//! ```
//! use twofaced::{scramble, descramble, BitWord};
//!
//! let x: BitWord = "0000100000".parse().unwrap();
//! let w: BitWord = "00".parse().unwrap();
//! let v = scramble(&x, &w);
//! assert_eq!(v.to_string(), "0000110110");
//! assert_eq!(descramble(&v, &w), x);
//! ```

pub mod analysis;
pub mod bits;
pub mod channel;
pub mod codec;
pub mod error;
pub mod params;
pub mod process;
pub mod rng;
pub mod transform;

pub use analysis::{
    ber_bound_bsc, ber_bound_ec, exact_ber, hoeffding_tail, optimize_l,
    posterior_error_isolated, run_monte_carlo, SimulationConfig, SimulationResult, WordPolicy,
};
pub use bits::{Bit, BitWord};
pub use channel::{transmit_bsc, transmit_ec, ChannelKind, ChannelSpec, ChannelSymbol, ReceivedWord};
pub use codec::{compute_delta, decode_bsc, decode_ec, encode, BranchCounts, BscThreshold, DecodeReport};
pub use error::{Error, Result};
pub use params::CodeParams;
pub use process::{
    build_transition_table, entropy_rate, sample_bernoulli, sample_two_faced, TransitionTable,
};
pub use rng::{Domain, Substream};
pub use transform::{descramble, scramble, symbol_count, zero_count};

pub(crate) fn serialize_bitword<S: serde::Serializer>(
    w: &BitWord,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&w.to_string())
}
