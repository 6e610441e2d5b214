//! A constructive dense cyclic subgroup of `T^H_p`.
//!
//! The generator is `ω₀ = (e^{2πi aₙ})` with `a₁ > a₂ > … > 0` rationally
//! independent and `aₙ < 1/(2ⁿ kₙ)`, where `kₙ` bounds the simultaneous
//! approximation search for the first `n - 1` angles at tolerance `2⁻ⁿ`. The
//! angles are scaled fractional parts of square roots of distinct primes, so
//! their rational independence rests on number theory and is not checked at
//! run time. `kₙ` itself is replaced by a certified upper bound from a grid
//! sweep, which only strengthens the second condition.
//!
//! All products `k·a` are reduced modulo 1 exactly from the binary expansion
//! of the stored `f64`, so residuals are not polluted by the size of `k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::{dist_p, wrap, Angle, PExponent, TorusSeq};

/// Residuals must beat the tolerance by this much to count.
pub const RESIDUAL_SLACK: f64 = 1e-15;

/// Largest supported generator length.
pub const MAX_GENERATOR_LEN: usize = 4;

/// Default cap on powers searched during generator certification.
pub const DEFAULT_CAP: u64 = 10_000_000;

const PRIMES: [u64; MAX_GENERATOR_LEN] = [2, 3, 5, 7];

/// Fractional part of `k·a` in `[0, 1)`, computed exactly in integers.
pub fn frac_mul(k: u64, a: f64) -> f64 {
    if a == 0.0 || k == 0 {
        return 0.0;
    }
    let bits = a.abs().to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac_bits = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_bits == 0 {
        (frac_bits, -1074)
    } else {
        (frac_bits | (1u64 << 52), exp_bits - 1075)
    };
    // |a| = mantissa · 2^exp
    let f = if exp >= 0 {
        0.0
    } else {
        let prod = k as u128 * mantissa as u128;
        let shift = (-exp) as u32;
        if shift >= 128 {
            prod as f64 * 2f64.powi(exp)
        } else {
            let rem = prod & ((1u128 << shift) - 1);
            rem as f64 * 2f64.powi(exp)
        }
    };
    if a < 0.0 && f > 0.0 {
        1.0 - f
    } else {
        f
    }
}

/// `⟨k·a - y⟩`, the distance of `k·a - y` to the nearest integer.
pub fn residual(k: u64, a: f64, y: f64) -> f64 {
    wrap(frac_mul(k, a) - y).abs()
}

/// Outcome of a simultaneous approximation search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KroneckerResult {
    /// Least power found, or the cap when exhausted.
    pub k: u64,
    /// `⟨k·a_s - y_s⟩` per coordinate (empty when exhausted).
    pub residuals: Vec<f64>,
    pub exhausted: bool,
}

/// Least `k ≤ cap` with `⟨k·a_s - y_s⟩ < tol` for every `s`.
pub fn kronecker_search(
    alphas: &[f64],
    targets: &[f64],
    tol: f64,
    cap: u64,
) -> Result<KroneckerResult> {
    if alphas.len() != targets.len() {
        return Err(Error::LengthMismatch(alphas.len(), targets.len()));
    }
    if !(tol > 0.0) {
        return Err(Error::out_of_range("tol", tol, "tol > 0"));
    }
    if cap == 0 {
        return Err(Error::out_of_range("cap", 0.0, "cap >= 1"));
    }
    let limit = tol - RESIDUAL_SLACK;
    for k in 1..=cap {
        if alphas
            .iter()
            .zip(targets)
            .all(|(&a, &y)| residual(k, a, y) < limit)
        {
            return Ok(KroneckerResult {
                k,
                residuals: alphas
                    .iter()
                    .zip(targets)
                    .map(|(&a, &y)| residual(k, a, y))
                    .collect(),
                exhausted: false,
            });
        }
    }
    Ok(KroneckerResult {
        k: cap,
        residuals: Vec::new(),
        exhausted: true,
    })
}

/// Certified `k̂` such that every target tuple admits some `k ≤ k̂` with all
/// residuals below `tol`.
///
/// Grid points `j/grid_levels` are covered at the reduced tolerance
/// `tol - h` (`h = 1/grid_levels`); every real tuple lies within `h/2` of a
/// grid point in each coordinate and residuals are 1-Lipschitz in the target,
/// so the maximum over the grid of the least covering power is a bound for all
/// tuples. The sweep walks `k` upward and marks every still-uncovered grid
/// point near `k·a`, so each grid point records its least power.
pub fn kronecker_covering_bound(
    alphas: &[f64],
    tol: f64,
    grid_levels: u32,
    cap: u64,
) -> Result<u64> {
    if alphas.is_empty() {
        return Ok(1);
    }
    if grid_levels == 0 {
        return Err(Error::out_of_range("grid_levels", 0.0, "grid_levels >= 1"));
    }
    let h = 1.0 / grid_levels as f64;
    let eff = tol - h;
    if !(eff > 0.0) {
        return Err(Error::GridTooCoarse { tol, spacing: h });
    }
    let dims = alphas.len();
    let levels = grid_levels as usize;
    let total = levels
        .checked_pow(dims as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::Invalid(format!("grid of {levels}^{dims} points is too large")))?;
    let mut covered = vec![false; total];
    let mut remaining = total;
    let limit = eff - RESIDUAL_SLACK;
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); dims];

    for k in 1..=cap {
        for (s, &a) in alphas.iter().enumerate() {
            let x = frac_mul(k, a);
            let lo = ((x - eff) / h).floor() as i64 - 1;
            let hi = ((x + eff) / h).ceil() as i64 + 1;
            let c = &mut candidates[s];
            c.clear();
            for j in lo..=hi {
                let jj = j.rem_euclid(levels as i64) as usize;
                if !c.contains(&jj) && wrap(x - jj as f64 * h).abs() < limit {
                    c.push(jj);
                }
            }
        }
        if candidates.iter().any(|c| c.is_empty()) {
            continue;
        }
        // walk the product of per-coordinate candidates
        let mut pos = vec![0usize; dims];
        loop {
            let idx = pos
                .iter()
                .enumerate()
                .fold(0usize, |acc, (s, &p)| acc * levels + candidates[s][p]);
            if !covered[idx] {
                covered[idx] = true;
                remaining -= 1;
                if remaining == 0 {
                    return Ok(k);
                }
            }
            let mut s = dims;
            loop {
                if s == 0 {
                    break;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < candidates[s].len() {
                    break;
                }
                pos[s] = 0;
            }
            if pos.iter().all(|&p| p == 0) {
                break;
            }
        }
    }
    Err(Error::CapExhausted { cap })
}

/// Where one generator angle came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSource {
    /// Coordinate `n` (1-based).
    pub index: usize,
    pub prime: u64,
    /// `aₙ = frac(√prime) / 2^scale_exponent`.
    pub scale_exponent: u32,
    /// Grid resolution used to certify `k̂ₙ` (0 for the first coordinate).
    pub grid_levels: u32,
}

/// Generator angles with certified approximation bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub alphas: Vec<f64>,
    /// `k̂₂, …, k̂ₙ`.
    pub k_bounds: Vec<u64>,
    pub provenance: Vec<AlphaSource>,
}

impl GeneratorSpec {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Certified bound `k̂ₙ` for `n ≥ 2`.
    pub fn k_bound(&self, n: usize) -> Option<u64> {
        n.checked_sub(2).and_then(|i| self.k_bounds.get(i)).copied()
    }

    /// Re-check monotonicity, range and `aₙ < 1/(2ⁿ k̂ₙ)` from the stored fields.
    pub fn check(&self) -> Result<()> {
        if self.alphas.is_empty() || self.k_bounds.len() + 1 != self.alphas.len() {
            return Err(Error::Postcondition(
                "generator needs one bound per coordinate after the first".into(),
            ));
        }
        for (i, &a) in self.alphas.iter().enumerate() {
            if !(a > 0.0 && a < 0.5) {
                return Err(Error::Postcondition(format!(
                    "a_{} = {a} outside (0, 1/2)",
                    i + 1
                )));
            }
        }
        if self.alphas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Postcondition(
                "angles are not strictly decreasing".into(),
            ));
        }
        for (i, &k) in self.k_bounds.iter().enumerate() {
            let n = i + 2;
            let bound = 1.0 / (2f64.powi(n as i32) * k as f64);
            if !(self.alphas[n - 1] < bound) {
                return Err(Error::Postcondition(format!(
                    "a_{n} = {} is not below 1/(2^{n} k_{n}) = {bound}",
                    self.alphas[n - 1]
                )));
            }
        }
        Ok(())
    }

    /// `ω₀^k`, reduced exactly.
    pub fn power(&self, k: u64) -> TorusSeq {
        self.alphas
            .iter()
            .map(|&a| Angle::wrapped(frac_mul(k, a)))
            .collect()
    }
}

/// Grid resolution used for level `n`: spacing a quarter of `2⁻ⁿ`.
fn grid_levels_for(n: usize) -> u32 {
    4 << n
}

/// Construct a generator of length `n_max` (2 to 4), certifying each `k̂ₙ`
/// with [`kronecker_covering_bound`] under `cap`.
pub fn build_generator(n_max: usize, cap: u64) -> Result<GeneratorSpec> {
    if !(2..=MAX_GENERATOR_LEN).contains(&n_max) {
        return Err(Error::out_of_range(
            "n_max",
            n_max as f64,
            "2 <= n_max <= 4",
        ));
    }
    let mut alphas = vec![2f64.sqrt() - 1.0];
    let mut provenance = vec![AlphaSource {
        index: 1,
        prime: PRIMES[0],
        scale_exponent: 0,
        grid_levels: 0,
    }];
    let mut k_bounds = Vec::new();
    for n in 2..=n_max {
        let tol = 0.5f64.powi(n as i32);
        let levels = grid_levels_for(n);
        let k_hat = kronecker_covering_bound(&alphas, tol, levels, cap)?;
        let ceiling = alphas[n - 2].min(1.0 / (2f64.powi(n as i32) * k_hat as f64));
        let prime = PRIMES[n - 1];
        let root = (prime as f64).sqrt();
        let base = root - root.floor();
        let mut j = 0u32;
        while base / 2f64.powi(j as i32) >= ceiling {
            j += 1;
        }
        alphas.push(base / 2f64.powi(j as i32));
        k_bounds.push(k_hat);
        provenance.push(AlphaSource {
            index: n,
            prime,
            scale_exponent: j,
            grid_levels: levels,
        });
    }
    let spec = GeneratorSpec {
        alphas,
        k_bounds,
        provenance,
    };
    spec.check()?;
    Ok(spec)
}

/// A power of the generator close to a target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxPower {
    pub k: u64,
    /// Truncation level `n` actually used (Kronecker tolerance `2⁻ⁿ` on the
    /// first `n - 1` coordinates).
    pub level: usize,
    /// Least level satisfying the tail-budget inequality.
    pub required_level: usize,
    /// Left-hand side of the tail-budget inequality at `level`, and `ε^q`.
    pub tail_budget: f64,
    pub eps_q: f64,
    /// `d_p(ω, ω₀^k)`, re-evaluated directly.
    pub distance: f64,
    /// `⟨k·aₛ - yₛ⟩` for `s < level`.
    pub residuals: Vec<f64>,
}

/// Tail budget `Σ_{s≥n}|1 - z_s|^p + (n-1)(2π)^p/2^{pn} + (4π)^p/(2^{pn}(2^p - 1))`.
fn tail_budget(omega: &TorusSeq, p: f64, n: usize) -> f64 {
    let tail: f64 = omega
        .angles()
        .iter()
        .skip(n - 1)
        .map(|a| a.chord().powf(p))
        .sum();
    let scale = 2f64.powf(p * n as f64);
    tail + (n as f64 - 1.0) * (2.0 * PI).powf(p) / scale
        + (4.0 * PI).powf(p) / (scale * (2f64.powf(p) - 1.0))
}

/// Find `k ≤ cap` with `d_p(ω, ω₀^k) < ε`.
///
/// The truncation level is the least `n` whose tail budget is below `ε^q`
/// (`q = max(p, 1)`), capped at one past the generator length. Candidates are
/// powers meeting the Kronecker tolerance `2⁻ⁿ` on the first `n - 1`
/// coordinates; the first candidate whose directly evaluated distance is
/// below `ε` is returned.
pub fn approx_power(
    omega: &TorusSeq,
    eps: f64,
    spec: &GeneratorSpec,
    p: PExponent,
    cap: u64,
) -> Result<ApproxPower> {
    if p.value() < 1.0 {
        return Err(Error::out_of_range("p", p.value(), "p >= 1"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::out_of_range("epsilon", eps, "epsilon > 0"));
    }
    if omega.len() > spec.len() {
        return Err(Error::Invalid(format!(
            "target has {} coordinates, generator only {}",
            omega.len(),
            spec.len()
        )));
    }
    let pv = p.value();
    let eps_q = eps.powf(pv);
    let required_level = (2..=1024usize)
        .find(|&n| tail_budget(omega, pv, n) < eps_q)
        .ok_or_else(|| Error::Invalid("tail budget never drops below epsilon^q".into()))?;
    let level = required_level.min(spec.len() + 1);
    let budget = tail_budget(omega, pv, level);

    let identity = TorusSeq::identity();
    let d0 = dist_p(omega, &identity, p);
    if d0 < eps {
        return Ok(ApproxPower {
            k: 0,
            level,
            required_level,
            tail_budget: budget,
            eps_q,
            distance: d0,
            residuals: Vec::new(),
        });
    }
    let tol = 0.5f64.powi(level as i32) - RESIDUAL_SLACK;
    let coords = level - 1;
    let targets: Vec<f64> = (1..=coords).map(|s| omega.get(s).value()).collect();
    let alphas = &spec.alphas[..coords];
    for k in 1..=cap {
        if !alphas
            .iter()
            .zip(&targets)
            .all(|(&a, &y)| residual(k, a, y) < tol)
        {
            continue;
        }
        let distance = dist_p(omega, &spec.power(k), p);
        if distance < eps {
            return Ok(ApproxPower {
                k,
                level,
                required_level,
                tail_budget: budget,
                eps_q,
                distance,
                residuals: alphas
                    .iter()
                    .zip(&targets)
                    .map(|(&a, &y)| residual(k, a, y))
                    .collect(),
            });
        }
    }
    if required_level > level {
        Err(Error::GeneratorTooShort {
            required: required_level,
            available: level,
            deficit: budget - eps_q,
        })
    } else {
        Err(Error::CapExhausted { cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_mul_is_exact() {
        assert_eq!(frac_mul(3, 0.5), 0.5);
        assert_eq!(frac_mul(4, 0.25), 0.0);
        assert_eq!(frac_mul(0, 0.3), 0.0);
        assert_eq!(frac_mul(1, -0.25), 0.75);
        let a = 2f64.sqrt() - 1.0;
        for k in [1u64, 7, 1234, 98_765_431] {
            // compare against 256-bit style long multiplication in f64 pieces
            let hi = (k >> 26) as f64;
            let lo = (k & ((1 << 26) - 1)) as f64;
            let approx = (hi * 2f64.powi(26) * a).rem_euclid(1.0) + (lo * a).rem_euclid(1.0);
            let want = approx.rem_euclid(1.0);
            assert!((frac_mul(k, a) - want).abs() < 1e-7, "k={k}");
        }
        // large k: frac(k a) + frac((2^40 - k) a) ≡ frac(2^40 a)
        let k = 987_654_321_987u64;
        let big = 1u64 << 40;
        let lhs = (frac_mul(k, a) + frac_mul(big - k, a)).rem_euclid(1.0);
        assert!((lhs - frac_mul(big, a)).abs() < 1e-15);
    }

    #[test]
    fn search_examples() {
        let a = [2f64.sqrt() - 1.0];
        let r = kronecker_search(&a, &[0.5], 0.1, 100).unwrap();
        assert_eq!(r.k, 1);
        assert!((r.residuals[0] - (1.5 - 2f64.sqrt())).abs() < 1e-15);
        let r = kronecker_search(&a, &[0.0], 0.5, 100).unwrap();
        assert_eq!(r.k, 1);
        let r = kronecker_search(&a, &[0.25], 0.01, 1_000_000).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.k, 3);
        assert!(kronecker_search(&a, &[0.1, 0.2], 0.1, 10).is_err());
        let r = kronecker_search(&a, &[0.25], 1e-9, 5).unwrap();
        assert!(r.exhausted);
        assert!(kronecker_search(&[], &[], 0.1, 3).unwrap().k == 1);
    }

    #[test]
    fn covering_examples() {
        let a = [2f64.sqrt() - 1.0];
        let k = kronecker_covering_bound(&a, 0.25, 20, 1000).unwrap();
        assert!(k <= 4, "{k}");
        assert_eq!(kronecker_covering_bound(&[], 0.1, 4, 10).unwrap(), 1);
        assert!(matches!(
            kronecker_covering_bound(&a, 0.05, 20, 10),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(matches!(
            kronecker_covering_bound(&a, 0.01, 1000, 3),
            Err(Error::CapExhausted { cap: 3 })
        ));
    }

    #[test]
    fn generator_two() {
        let g = build_generator(2, DEFAULT_CAP).unwrap();
        assert!((g.alphas[0] - 0.414_213_562).abs() < 1e-9);
        assert!(g.alphas[0] > g.alphas[1] && g.alphas[1] > 0.0);
        assert_eq!(g.provenance[1].prime, 3);
        let k2 = g.k_bounds[0];
        assert!(g.alphas[1] < 1.0 / (4.0 * k2 as f64));
        let base = 3f64.sqrt() - 1.0;
        let j = g.provenance[1].scale_exponent;
        assert_eq!(g.alphas[1], base / 2f64.powi(j as i32));
        g.check().unwrap();
        assert!(build_generator(1, 10).is_err());
        assert!(build_generator(5, 10).is_err());
    }

    #[test]
    fn check_catches_violations() {
        let mut g = build_generator(2, DEFAULT_CAP).unwrap();
        g.alphas[1] = 0.45;
        assert!(g.check().is_err());
        let mut g = build_generator(2, DEFAULT_CAP).unwrap();
        g.k_bounds[0] *= 1_000_000;
        assert!(g.check().is_err());
    }

    #[test]
    fn approx_identity_is_power_zero() {
        let g = build_generator(2, DEFAULT_CAP).unwrap();
        let r = approx_power(&TorusSeq::identity(), 0.1, &g, PExponent::TWO, 10).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn approx_rejects_bad_input() {
        let g = build_generator(2, DEFAULT_CAP).unwrap();
        let w = TorusSeq::from_turns(&[0.1, 0.1, 0.1]).unwrap();
        assert!(approx_power(&w, 0.1, &g, PExponent::TWO, 10).is_err());
        let w = TorusSeq::from_turns(&[0.1]).unwrap();
        assert!(approx_power(&w, 0.1, &g, PExponent::SUP, 10).is_err());
        assert!(approx_power(&w, 0.0, &g, PExponent::TWO, 10).is_err());
    }
}
