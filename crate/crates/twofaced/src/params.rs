//! Code parameters shared by sender and receiver.

use serde::Serialize;

use crate::bits::BitWord;
use crate::error::{Error, Result};

/// The triple `(l, w, p)`: memory length, shared context word of length
/// exactly `l`, and the source probability of zero.
///
/// `w` plays the role of a shared secret: it seeds the parity window of the
/// scrambling transform and is known to both endpoints but never transmitted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeParams {
    l: usize,
    #[serde(serialize_with = "crate::serialize_bitword")]
    w: BitWord,
    p: f64,
}

impl CodeParams {
    /// Validates `w.len() == l >= 1` and `1/2 < p < 1`.
    pub fn new(l: usize, w: BitWord, p: f64) -> Result<CodeParams> {
        if l == 0 {
            return Err(Error::InvalidParameter("memory length l must be >= 1".into()));
        }
        if w.len() != l {
            return Err(Error::InvalidParameter(format!(
                "context word length {} does not match l = {l}",
                w.len()
            )));
        }
        if !(p > 0.5 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "probability of zero p = {p} must lie in (1/2, 1)"
            )));
        }
        Ok(CodeParams { l, w, p })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn w(&self) -> &BitWord {
        &self.w
    }

    /// Probability of zero.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Probability of one, `q = 1 - p`.
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitWord;

    #[test]
    fn rejects_bad_parameters() {
        let w1: BitWord = "0".parse().unwrap();
        assert!(CodeParams::new(0, BitWord::new(), 0.9).is_err());
        assert!(CodeParams::new(2, w1.clone(), 0.9).is_err());
        assert!(CodeParams::new(1, w1.clone(), 0.5).is_err());
        assert!(CodeParams::new(1, w1.clone(), 1.0).is_err());
        assert!(CodeParams::new(1, w1.clone(), 0.3).is_err());
        assert!(CodeParams::new(1, w1, 0.9).is_ok());
    }

    #[test]
    fn q_complements_p() {
        let params = CodeParams::new(2, "01".parse().unwrap(), 0.75).unwrap();
        assert!((params.p() + params.q() - 1.0).abs() < 1e-15);
    }
}
