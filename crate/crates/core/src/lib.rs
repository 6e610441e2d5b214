//! Torus sequence groups `T^H_p`, shifted product measures on the torus,
//! polar sets of characters, a dense cyclic subgroup of `T^H_p`, and the
//! a-adic groups `G_p`, all at finite truncation.
//!
//! Angles are measured in turns: `φ ∈ [-1/2, 1/2)` stands for `e^{2πiφ}`.

pub mod adic;
pub mod characters;
pub mod error;
pub mod measure;
pub mod monothetic;
pub mod polar;
pub mod quadrature;
pub mod torus;
pub mod tseq;

pub use characters::{norm, pair, window_enumerate, Character, NormKind, WindowSet};
pub use error::{Error, ErrorClass, Result};
pub use measure::{
    density_eval, hellinger_closed, hellinger_quad, kakutani_classify, linear_shift_slope,
    DensityFamily, HellingerTrace, Thresholds, TracePoint, Verdict,
};
pub use monothetic::{
    approx_power, build_generator, kronecker_covering_bound, kronecker_search, ApproxPower,
    GeneratorSpec, KroneckerResult,
};
pub use polar::{
    bipolar_sup, hull_witness, lemma1_bounds, lemma1_check, polar_member_closed, polar_sup_oracle,
    BipolarSup, HullWitness, PolarSup, PolarVerdict,
};
pub use quadrature::{integrate, Quadrature};
pub use torus::{
    canonical_angle, chord, dist_p, quotient_dist, quotient_iso, rho_p, Angle, PExponent, RealSeq,
    TorusSeq,
};
pub use tseq::{tseq_member, tseq_window_inclusion, TSeqNeighborhood};
