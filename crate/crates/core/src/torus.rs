//! Torus arithmetic and the metrics of the sequence groups `T^H_p`.
//!
//! A torus element `z = e^{2πiφ}` is stored as its angle `φ` measured in
//! turns and reduced into the half-open interval `[-1/2, 1/2)`. A
//! [`TorusSeq`] is a finite window of such angles followed by an exact tail
//! of identity elements, so every metric below is exact for the element it
//! represents rather than an approximation of a longer sequence.
//!
//! Two metrics are provided:
//!
//! | Function | Coordinates compared by | Formula |
//! |----------|-------------------------|---------|
//! | [`dist_p`] | chord `|z¹ - z²|` | `(Σ |z¹ₙ - z²ₙ|^p)^{1/p}`, sup for `p = 0` |
//! | [`rho_p`] | canonical angle difference | `(Σ |φ¹ₙ - φ²ₙ|^p)^{1/p}`, sup for `p = 0` |
//!
//! They are equivalent through the chord bound `π|φ| ≤ |1 - z| ≤ 2π|φ|`.
//! [`quotient_iso`] realises `l^p / Z₀^∞ ≅ T^H_p` and [`quotient_dist`] is the
//! quotient metric on the left-hand side.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce a finite real into `[-1/2, 1/2)` without validation.
pub(crate) fn wrap(x: f64) -> f64 {
    let mut r = x - (x + 0.5).floor();
    // (x + 0.5) can round across an integer for x just below a half-integer
    if r >= 0.5 {
        r -= 1.0;
    } else if r < -0.5 {
        r += 1.0;
    }
    r
}

/// A torus element represented by its angle in turns, canonical in `[-1/2, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Canonicalise `x` modulo 1. Same as [`canonical_angle`].
    pub fn new(x: f64) -> Result<Self> {
        canonical_angle(x)
    }

    pub(crate) fn wrapped(x: f64) -> Self {
        Angle(wrap(x))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `|1 - z|` for `z = e^{2πiφ}`.
    #[inline]
    pub fn chord(self) -> f64 {
        chord(self)
    }

    /// Group operation (multiplication of torus elements).
    pub fn add(self, other: Angle) -> Angle {
        Angle::wrapped(self.0 + other.0)
    }

    pub fn sub(self, other: Angle) -> Angle {
        Angle::wrapped(self.0 - other.0)
    }

    pub fn neg(self) -> Angle {
        Angle::wrapped(-self.0)
    }

    /// `Re e^{2πiφ} ≥ 0`, i.e. the phase lies in `[-1/4, 1/4]`.
    pub fn in_right_half_plane(self) -> bool {
        self.0.abs() <= 0.25
    }
}

impl TryFrom<f64> for Angle {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        canonical_angle(x)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

/// Reduce `x` modulo 1 into `[-1/2, 1/2)`; `1/2` maps to `-1/2`.
pub fn canonical_angle(x: f64) -> Result<Angle> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    Ok(Angle::wrapped(x))
}

/// `|1 - e^{2πiφ}| = 2|sin πφ|`.
pub fn chord(phi: Angle) -> f64 {
    2.0 * (PI * phi.0).sin().abs()
}

/// Exponent `p` of `T^H_p` / `l^p`: either `0` (sup metric) or `p ≥ 1`.
///
/// Values in `(0, 1)` can only be built with [`PExponent::quasi`]; they are
/// accepted by the metrics, where the outer power is `min(1, 1/p) = 1`, and
/// rejected by every duality operation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PExponent(f64);

impl PExponent {
    pub const SUP: PExponent = PExponent(0.0);
    pub const ONE: PExponent = PExponent(1.0);
    pub const TWO: PExponent = PExponent(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && (p == 0.0 || p >= 1.0) {
            Ok(PExponent(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    /// Quasi-norm exponent `0 < p < 1` (metrics only).
    pub fn quasi(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 && p < 1.0 {
            Ok(PExponent(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_sup(self) -> bool {
        self.0 == 0.0
    }

    pub fn is_quasi(self) -> bool {
        self.0 > 0.0 && self.0 < 1.0
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`; defined only for `p > 1`.
    pub fn conjugate(self) -> Option<f64> {
        (self.0 > 1.0).then(|| self.0 / (self.0 - 1.0))
    }

    /// Outer power `min(1, 1/p)` of the metric (unused for the sup case).
    pub fn outer(self) -> f64 {
        if self.0 >= 1.0 {
            1.0 / self.0
        } else {
            1.0
        }
    }

    /// Aggregate nonnegative coordinate terms into the `p`-metric value.
    pub(crate) fn aggregate<I: IntoIterator<Item = f64>>(self, terms: I) -> f64 {
        if self.is_sup() {
            terms.into_iter().fold(0.0, f64::max)
        } else {
            let p = self.0;
            let s: f64 = terms.into_iter().map(|t| t.powf(p)).sum();
            s.powf(self.outer())
        }
    }
}

impl TryFrom<f64> for PExponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        PExponent::new(p)
    }
}

impl From<PExponent> for f64 {
    fn from(p: PExponent) -> f64 {
        p.0
    }
}

/// A finite window of a torus sequence; coordinates past the window are `1`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusSeq {
    angles: Vec<Angle>,
}

impl TorusSeq {
    pub fn identity() -> Self {
        TorusSeq { angles: Vec::new() }
    }

    pub fn new(angles: Vec<Angle>) -> Self {
        TorusSeq { angles }
    }

    /// Build from raw turns, canonicalising each.
    pub fn from_turns(turns: &[f64]) -> Result<Self> {
        let angles = turns
            .iter()
            .map(|&x| canonical_angle(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusSeq { angles })
    }

    /// `n` copies of the same angle.
    pub fn constant(phi: Angle, n: usize) -> Self {
        TorusSeq {
            angles: vec![phi; n],
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// Coordinate `n` (1-based); identity past the window.
    pub fn get(&self, n: usize) -> Angle {
        n.checked_sub(1)
            .and_then(|i| self.angles.get(i))
            .copied()
            .unwrap_or(Angle::ZERO)
    }

    /// True when every stored coordinate is the identity.
    pub fn is_identity(&self) -> bool {
        self.angles.iter().all(|a| a.0 == 0.0)
    }

    /// Coordinate-wise product `ω₁·ω₂`.
    pub fn mul(&self, other: &TorusSeq) -> TorusSeq {
        let n = self.len().max(other.len());
        TorusSeq {
            angles: (1..=n).map(|i| self.get(i).add(other.get(i))).collect(),
        }
    }

    pub fn inverse(&self) -> TorusSeq {
        TorusSeq {
            angles: self.angles.iter().map(|a| a.neg()).collect(),
        }
    }

    /// Pairs of coordinates over the union of both windows.
    fn zip_padded<'a>(&'a self, other: &'a TorusSeq) -> impl Iterator<Item = (Angle, Angle)> + 'a {
        let n = self.len().max(other.len());
        (1..=n).map(move |i| (self.get(i), other.get(i)))
    }
}

impl FromIterator<Angle> for TorusSeq {
    fn from_iter<T: IntoIterator<Item = Angle>>(iter: T) -> Self {
        TorusSeq {
            angles: iter.into_iter().collect(),
        }
    }
}

/// A finitely supported real sequence in `l^p`, tagged with its exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealSeq {
    pub values: Vec<f64>,
    pub exponent: PExponent,
}

impl RealSeq {
    pub fn new(values: Vec<f64>, exponent: PExponent) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(RealSeq { values, exponent })
    }

    fn get(&self, n: usize) -> f64 {
        self.values.get(n).copied().unwrap_or(0.0)
    }
}

/// The chord metric `d_p` on truncations (shorter window padded with identity).
pub fn dist_p(w1: &TorusSeq, w2: &TorusSeq, p: PExponent) -> f64 {
    p.aggregate(w1.zip_padded(w2).map(|(a, b)| chord(a.sub(b))))
}

/// The angle metric `ρ_p`; each coordinate difference is canonicalised first.
pub fn rho_p(w1: &TorusSeq, w2: &TorusSeq, p: PExponent) -> f64 {
    p.aggregate(w1.zip_padded(w2).map(|(a, b)| a.sub(b).0.abs()))
}

/// Quotient metric `d*` on `l^p / Z₀^∞`: `(Σ|sₙ|^p)^{min(1,1/p)}` with
/// `sₙ = (yₙ - xₙ) mod 1 ∈ [-1/2, 1/2)`.
pub fn quotient_dist(x: &RealSeq, y: &RealSeq) -> Result<f64> {
    if x.exponent != y.exponent {
        return Err(Error::ExponentMismatch(x.exponent.0, y.exponent.0));
    }
    let n = x.values.len().max(y.values.len());
    Ok(x.exponent
        .aggregate((0..n).map(|i| wrap(y.get(i) - x.get(i)).abs())))
}

/// The isomorphism `l^p / Z₀^∞ → T^H_p`, `(xₙ) ↦ (e^{2πi xₙ})`.
pub fn quotient_iso(x: &RealSeq) -> TorusSeq {
    x.values.iter().map(|&v| Angle::wrapped(v)).collect()
}
