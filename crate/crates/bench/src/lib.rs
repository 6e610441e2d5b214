//! Shared inputs for the benchmarks.

use quasitorus::adic::GammaSeq;
use quasitorus::TorusSeq;

/// Base window `a_k = (k+1)²` used by the adic benchmarks.
pub fn square_base(len: usize) -> GammaSeq {
    GammaSeq::squares(len)
}

/// A target with `len` equal coordinates `phi`.
pub fn flat_target(phi: f64, len: usize) -> TorusSeq {
    TorusSeq::from_turns(&vec![phi; len]).expect("finite turns")
}
