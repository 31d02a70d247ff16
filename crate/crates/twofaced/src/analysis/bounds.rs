//! Closed-form residual-error estimates and related numeric utilities.

use crate::channel::ChannelKind;
use crate::codec::compute_delta;
use crate::error::{Error, Result};

/// `C(n, k)` as f64: exact integer arithmetic up to `n = 64`, log-gamma-free
/// log-space accumulation beyond.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 64 {
        let mut c: u128 = 1;
        for j in 0..k {
            c = c * (n - j) as u128 / (j + 1) as u128;
        }
        c as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

/// `ln C(n, k)` accumulated as a sum of logs; relative error well under
/// 1e-10 for the orders used here.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|j| (((n - j) as f64) / ((j + 1) as f64)).ln()).sum()
}

/// `C(n, i) * a^i * b^(n - i)`, switching to log space when the exact
/// integer coefficient is unavailable.
fn binomial_term(n: usize, i: usize, a: f64, b: f64) -> f64 {
    if n <= 64 {
        binomial(n, i) * a.powi(i as i32) * b.powi((n - i) as i32)
    } else {
        (ln_binomial(n, i) + i as f64 * a.ln() + (n - i) as f64 * b.ln()).exp()
    }
}

/// Upper estimate of the bit error rate of the erasure-channel decoder with
/// memory `l`, source zero-probability `p`, erasure probability `pi` and
/// word length `n`:
///
/// `pi * [ (1 - l/n) (1-pi)^(2l+1) * sum_{i=floor((l+1)/2)}^{l} C(l+1,i) p^i q^(l+1-i)`
/// `     + ((1 - (1-pi)^(2l+1)) + l/n) / 2 ] * (l+1)`
///
/// The first part covers maximum-likelihood fills with a fully observed
/// window, the second the coin-flip fills; the trailing factor spreads each
/// corrupted symbol over the positions it can disturb after descrambling.
pub fn ber_bound_ec(l: usize, p: f64, pi: f64, n: usize) -> f64 {
    assert!(l >= 1 && n > l, "need n > l >= 1");
    assert!(p > 0.5 && p < 1.0, "p outside (1/2, 1)");
    assert!((0.0..0.5).contains(&pi), "pi outside [0, 1/2)");
    let lp1 = l + 1;
    let q = 1.0 - p;
    let ratio = l as f64 / n as f64;
    let sum: f64 = (lp1 / 2..=l).map(|i| binomial_term(lp1, i, p, q)).sum();
    let window_clean = (1.0 - pi).powi(2 * l as i32 + 1);
    let ml_part = (1.0 - ratio) * window_clean * sum;
    let coin_part = ((1.0 - window_clean) + ratio) / 2.0;
    pi * (ml_part + coin_part) * lp1 as f64
}

/// Upper estimate of the bit error rate of the binary-symmetric-channel
/// decoder:
///
/// `[ ((1-pi) * sum_{i=0}^{delta-1} C(l+1,i) p^i q^(l+1-i)`
/// `  + pi * sum_{i=delta}^{l} C(l+1,i) q^i p^(l+1-i)) * (1 - l/n)`
/// `  + pi * l/n ] * (l+1)`
///
/// The first sum covers clean symbols complemented by the decoder, the
/// second channel flips the decoder failed to undo. Both sums take the
/// window statistic under undisturbed surroundings, so the estimate is
/// reliable only where channel errors are effectively isolated; see the
/// acceptance suite for where the decoder exceeds it.
pub fn ber_bound_bsc(l: usize, p: f64, pi: f64, n: usize) -> Result<f64> {
    let delta = compute_delta(l, p, pi)?.delta();
    Ok(ber_bound_bsc_with_delta(l, p, pi, n, delta))
}

/// The same formula with the threshold supplied by the caller; the second
/// sum is empty (by convention zero) whenever `delta > l`.
pub(crate) fn ber_bound_bsc_with_delta(l: usize, p: f64, pi: f64, n: usize, delta: usize) -> f64 {
    assert!(l >= 1 && n > l, "need n > l >= 1");
    let lp1 = l + 1;
    let q = 1.0 - p;
    let ratio = l as f64 / n as f64;
    let miscorrect: f64 = (0..delta).map(|i| binomial_term(lp1, i, p, q)).sum();
    let uncorrected: f64 = (delta..=l).map(|i| binomial_term(lp1, i, q, p)).sum();
    ((((1.0 - pi) * miscorrect + pi * uncorrected) * (1.0 - ratio)) + pi * ratio) * lp1 as f64
}

/// Exponential upper bound on the binomial upper tail
/// `sum_{i=k}^{m} C(m,i) p^i (1-p)^(m-i)`: returns
/// `exp(-2m (k/m - p)^2)`, valid for `k > m p`.
pub fn hoeffding_tail(m: usize, k: usize, p: f64) -> Result<f64> {
    if (k as f64) <= m as f64 * p {
        return Err(Error::InvalidParameter(format!(
            "hoeffding tail requires k > m*p, got k = {k}, m*p = {}",
            m as f64 * p
        )));
    }
    Ok((-2.0 * m as f64 * (k as f64 / m as f64 - p).powi(2)).exp())
}

/// Scans `l = 1..=l_max` and returns the memory length minimizing the
/// applicable estimate, with ties broken toward smaller `l`. For the binary
/// symmetric channel, lengths without a keep threshold are skipped.
pub fn optimize_l(
    p: f64,
    pi: f64,
    n: usize,
    kind: ChannelKind,
    l_max: usize,
) -> Result<(usize, f64)> {
    if l_max == 0 || l_max >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= l_max < n, got l_max = {l_max}, n = {n}"
        )));
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
    let mut best: Option<(usize, f64)> = None;
    for l in 1..=l_max {
        let bound = match kind {
            ChannelKind::Ec => ber_bound_ec(l, p, pi, n),
            ChannelKind::Bsc => match ber_bound_bsc(l, p, pi, n) {
                Ok(b) => b,
                Err(Error::Config(_)) => continue,
                Err(e) => return Err(e),
            },
        };
        if best.is_none_or(|(_, b)| bound < b) {
            best = Some((l, bound));
        }
    }
    best.ok_or_else(|| Error::Config("no feasible memory length in the scanned range".into()))
}
