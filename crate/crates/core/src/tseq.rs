//! Neighbourhoods of zero in `Z₀^∞` for the finest group topology in which
//! the unit vectors `eₙ` converge to zero.
//!
//! Such a neighbourhood is `W = ∪ₖ (A*_{i₁} + … + A*_{iₖ})` for an increasing
//! threshold sequence `i₁ < i₂ < …`, with `A*ₙ = {0, ±e_m : m ≥ n}`.

use serde::{Deserialize, Serialize};

use crate::characters::{window_enumerate, Character, WindowSet};
use crate::error::{Error, Result};

/// A stored prefix of thresholds, continued by consecutive integers
/// (`i_{j+1} = i_j + 1`) past the prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct TSeqNeighborhood {
    thresholds: Vec<u64>,
}

impl TSeqNeighborhood {
    pub fn new(thresholds: Vec<u64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::Invalid("threshold prefix is empty".into()));
        }
        if thresholds[0] == 0 {
            return Err(Error::Invalid("thresholds must be positive".into()));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "thresholds must be strictly increasing".into(),
            ));
        }
        Ok(TSeqNeighborhood { thresholds })
    }

    pub fn prefix(&self) -> &[u64] {
        &self.thresholds
    }

    /// Threshold `i_t` for slot `t ≥ 1`.
    pub fn threshold(&self, t: usize) -> u64 {
        assert!(t >= 1, "slots are 1-based");
        let len = self.thresholds.len();
        if t <= len {
            self.thresholds[t - 1]
        } else {
            self.thresholds[len - 1] + (t - len) as u64
        }
    }
}

impl TryFrom<Vec<u64>> for TSeqNeighborhood {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        TSeqNeighborhood::new(v)
    }
}

impl From<TSeqNeighborhood> for Vec<u64> {
    fn from(w: TSeqNeighborhood) -> Self {
        w.thresholds
    }
}

/// Membership `χ ∈ W`.
///
/// `χ` is split into `|χ|₁` signed unit vectors whose indices, sorted
/// ascending, must dominate the thresholds slot by slot. Matching the
/// smallest index to the smallest threshold is optimal since slots only get
/// harder.
pub fn tseq_member(chi: &Character, w: &TSeqNeighborhood) -> bool {
    let mut slot = 1usize;
    // iter() is ordered by index, so units come out sorted
    for (m, n) in chi.iter() {
        for _ in 0..n.unsigned_abs() {
            if (m as u64) < w.threshold(slot) {
                return false;
            }
            slot += 1;
        }
    }
    true
}

/// Least `m` such that `A(k, m) ⊂ W` on indices up to `support_max`.
pub fn tseq_window_inclusion(w: &TSeqNeighborhood, k: usize, support_max: usize) -> Result<usize> {
    for m in 0..support_max {
        let window = window_enumerate(WindowSet::new(k, m), support_max)?;
        if window.iter().all(|chi| tseq_member(chi, w)) {
            return Ok(m);
        }
    }
    Err(Error::CapExhausted {
        cap: support_max as u64,
    })
}
