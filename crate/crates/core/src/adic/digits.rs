//! Digit expansions `x = Σ ε_k/γ(k+1)`, the distance `r₀`, Q-approximation
//! and the embedding `S_p` into torus sequences.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{check_unit_interval, decimal, frac, int_q, nearest_int_dist, GammaSeq};
use crate::error::{Error, Result};
use crate::torus::{Angle, PExponent, TorusSeq};

/// Digits `ε₁, …, ε_N` with `0 ≤ ε_k < a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdicDigits {
    #[serde(with = "decimal::vec")]
    digits: Vec<BigUint>,
}

impl AdicDigits {
    pub fn new(digits: Vec<BigUint>, base: &GammaSeq) -> Result<Self> {
        let d = AdicDigits { digits };
        d.validate(base)?;
        Ok(d)
    }

    pub fn from_u64(digits: &[u64], base: &GammaSeq) -> Result<Self> {
        Self::new(digits.iter().map(|&x| BigUint::from(x)).collect(), base)
    }

    /// Range check against a base; needed after deserialisation.
    pub fn validate(&self, base: &GammaSeq) -> Result<()> {
        if self.digits.len() > base.len() {
            return Err(Error::LengthMismatch(self.digits.len(), base.len()));
        }
        for (i, d) in self.digits.iter().enumerate() {
            if d >= base.a(i + 1) {
                return Err(Error::Invalid(format!(
                    "digit {} = {d} not below a_{} = {}",
                    i + 1,
                    i + 1,
                    base.a(i + 1)
                )));
            }
        }
        Ok(())
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Result of [`digits_of`]: `x = from_digits(digits) + remainder`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub digits: AdicDigits,
    #[serde(with = "decimal::one")]
    pub remainder: BigRational,
    pub exact: bool,
}

/// The first `n` digits of `x ∈ [0, 1)`:
/// `ε_k = ⌊x·γ(k+1)⌋ - a_k·⌊x·γ(k)⌋`.
pub fn digits_of(x: &BigRational, base: &GammaSeq, n: usize) -> Result<DigitExpansion> {
    check_unit_interval(x)?;
    if n > base.len() {
        return Err(Error::LengthMismatch(n, base.len()));
    }
    let mut digits = Vec::with_capacity(n);
    let mut prev = BigInt::zero();
    for k in 1..=n {
        let cur = (x * int_q(base.gamma(k + 1))).floor().to_integer();
        let eps = &cur - &prev * BigInt::from(base.a(k).clone());
        digits.push(eps.to_biguint().expect("greedy digits are nonnegative"));
        prev = cur;
    }
    let digits = AdicDigits { digits };
    let remainder = x - from_digits(&digits, base);
    let exact = remainder.is_zero();
    Ok(DigitExpansion {
        digits,
        remainder,
        exact,
    })
}

/// `Σ ε_k/γ(k+1)`, exactly.
pub fn from_digits(d: &AdicDigits, base: &GammaSeq) -> BigRational {
    // Horner from the last digit: x = (ε₁ + (ε₂ + …)/a₂)/a₁
    let mut acc = BigRational::zero();
    for (i, eps) in d.digits.iter().enumerate().rev() {
        acc = (acc + int_q(eps)) / int_q(base.a(i + 1));
    }
    acc
}

/// `r₀(x, y) = sup_{n ≤ N} ⟨γ(n)(x - y)⟩`, exactly.
pub fn r0_dist(x: &BigRational, y: &BigRational, base: &GammaSeq, n: usize) -> Result<BigRational> {
    if n > base.len() + 1 {
        return Err(Error::LengthMismatch(n, base.len() + 1));
    }
    let diff = x - y;
    Ok((1..=n)
        .map(|k| nearest_int_dist(&(&diff * int_q(base.gamma(k)))))
        .max()
        .unwrap_or_else(BigRational::zero))
}

/// Output of [`q_approx`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QApprox {
    /// Selected truncation index `N`.
    pub n: usize,
    /// `x_N = Σ_{k<N} ε_k/γ(k+1)`.
    #[serde(with = "decimal::one")]
    pub x_n: BigRational,
    /// `r₀(x, x_N)` over every `n` (exact: later terms are integers).
    #[serde(with = "decimal::one")]
    pub r0: BigRational,
}

/// Truncate a digit stream to a point of `Q` within `r₀`-distance `eps`.
///
/// `N` is the least index with `a_{N-1} > 1/ε` and `⟨γ(n)x⟩ < ε` for all
/// `n ≥ N`. The digit stream is finite, so `γ(n)x` is an integer from
/// `n = len + 1` on and the tail condition is checked exactly. The returned
/// distance is re-evaluated and must be below `eps`.
pub fn q_approx(x: &AdicDigits, base: &GammaSeq, eps: f64) -> Result<QApprox> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::out_of_range("epsilon", eps, "epsilon > 0"));
    }
    x.validate(base)?;
    let eps_q = BigRational::from_float(eps).expect("finite");
    let value = from_digits(x, base);
    let depth = x.len() + 1;
    // ⟨γ(n)x⟩ for n = 1..=depth; zero beyond
    let tail: Vec<BigRational> = (1..=depth)
        .map(|k| nearest_int_dist(&(&value * int_q(base.gamma(k)))))
        .collect();
    let top = base.len() + 1;
    for n in 2..=top {
        let a = int_q(base.a(n - 1));
        if a * &eps_q <= BigRational::from_integer(1.into()) {
            continue;
        }
        if tail.iter().skip(n - 1).any(|t| *t >= eps_q) {
            continue;
        }
        let x_n = truncate(x, base, n);
        let r0 = r0_dist(&value, &x_n, base, depth.max(n).min(top))?;
        if r0 >= eps_q {
            return Err(Error::Postcondition(format!(
                "r0(x, x_{n}) = {r0} is not below {eps}"
            )));
        }
        return Ok(QApprox { n, x_n, r0 });
    }
    Err(Error::InsufficientDepth {
        depth: base.len(),
        reason: format!("no a_k in the window exceeds 1/epsilon = {}", 1.0 / eps),
    })
}

fn truncate(x: &AdicDigits, base: &GammaSeq, n: usize) -> BigRational {
    let keep = (n - 1).min(x.len());
    from_digits(
        &AdicDigits {
            digits: x.digits[..keep].to_vec(),
        },
        base,
    )
}

fn embed_phases(x: &BigRational, base: &GammaSeq, n: usize) -> Result<Vec<BigRational>> {
    check_unit_interval(x)?;
    if n > base.len() + 1 {
        return Err(Error::LengthMismatch(n, base.len() + 1));
    }
    Ok((1..=n).map(|k| frac(&(x * int_q(base.gamma(k))))).collect())
}

fn to_angle(r: &BigRational) -> Angle {
    Angle::wrapped(r.to_f64().expect("phase in [0, 1)"))
}

/// `S_p(z) = (z^{γ(1)}, …, z^{γ(N)})` for a rational `x`.
pub fn embed_sp_exact(x: &BigRational, base: &GammaSeq, n: usize) -> Result<TorusSeq> {
    Ok(embed_phases(x, base, n)?.iter().map(to_angle).collect())
}

/// [`embed_sp_exact`] for a float, read as the exact dyadic it stores.
pub fn embed_sp(x: f64, base: &GammaSeq, n: usize) -> Result<TorusSeq> {
    let q = BigRational::from_float(x).ok_or(Error::NonFinite(x))?;
    embed_sp_exact(&q, base, n)
}

/// `‖z‖_p` truncated at `N` for a rational `x`; `p = 0` gives the sup.
pub fn norm_gp_exact(x: &BigRational, base: &GammaSeq, p: PExponent, n: usize) -> Result<f64> {
    let phases = embed_phases(x, base, n)?;
    if p.is_quasi() {
        return Err(Error::InvalidExponent(p.value()));
    }
    Ok(p.aggregate(phases.iter().map(|r| to_angle(r).chord())))
}

/// [`norm_gp_exact`] for a float, read as the exact dyadic it stores.
pub fn norm_gp(x: f64, base: &GammaSeq, p: PExponent, n: usize) -> Result<f64> {
    let q = BigRational::from_float(x).ok_or(Error::NonFinite(x))?;
    norm_gp_exact(&q, base, p, n)
}
