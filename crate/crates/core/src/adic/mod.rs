//! The a-adic groups `G_p`.
//!
//! A base `a₁, a₂, …` of integers `aₙ ≥ 2` defines `γ(1) = 1`,
//! `γ(n+1) = a₁⋯aₙ`. `G_p` is the set of circle points `z` with
//! `Σ|1 - z^{γ(n)}|^p < ∞`, and `Q ⊂ G_p` are the points with
//! `z^{γ(n)} = 1` eventually. Points are written in turns `x ∈ [0, 1)`.
//! Everything touching `γ` is exact: unbounded integers for the base and
//! rationals for points of `Q`.

mod chars;
pub(crate) mod decimal;
mod digits;

pub use chars::{
    annihilator_test, digitchar_to_int, int_to_digitchar, pair_digitchar, pair_gp, pair_sparse,
    quotient_reduce, DigitChar, SparseGammaChar, Tail,
};
pub use digits::{
    digits_of, embed_sp, embed_sp_exact, from_digits, norm_gp, norm_gp_exact, q_approx, r0_dist,
    AdicDigits, DigitExpansion, QApprox,
};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite window `a₁, …, a_L` of the base with cached `γ(1), …, γ(L+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GammaRepr", into = "GammaRepr")]
pub struct GammaSeq {
    a: Vec<BigUint>,
    gamma: Vec<BigUint>,
}

#[derive(Serialize, Deserialize)]
struct GammaRepr {
    #[serde(with = "decimal::vec")]
    a: Vec<BigUint>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_vec",
        deserialize_with = "decimal::opt_vec::deserialize"
    )]
    gamma: Option<Vec<BigUint>>,
}

fn ser_opt_vec<S: serde::Serializer>(
    v: &Option<Vec<BigUint>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => decimal::vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

impl TryFrom<GammaRepr> for GammaSeq {
    type Error = Error;

    fn try_from(r: GammaRepr) -> Result<Self> {
        let g = GammaSeq::new(r.a)?;
        if let Some(gamma) = r.gamma {
            if gamma != g.gamma {
                return Err(Error::Invalid(
                    "gamma does not match the products of a".into(),
                ));
            }
        }
        Ok(g)
    }
}

impl From<GammaSeq> for GammaRepr {
    fn from(g: GammaSeq) -> Self {
        GammaRepr {
            a: g.a,
            gamma: Some(g.gamma),
        }
    }
}

impl GammaSeq {
    pub fn new(a: Vec<BigUint>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Invalid("base window is empty".into()));
        }
        let two = BigUint::from(2u32);
        if let Some(i) = a.iter().position(|x| *x < two) {
            return Err(Error::Invalid(format!("a_{} = {} is below 2", i + 1, a[i])));
        }
        let mut gamma = Vec::with_capacity(a.len() + 1);
        gamma.push(BigUint::one());
        for ak in &a {
            let next = gamma.last().expect("nonempty") * ak;
            gamma.push(next);
        }
        Ok(GammaSeq { a, gamma })
    }

    pub fn from_u64(a: &[u64]) -> Result<Self> {
        Self::new(a.iter().map(|&x| BigUint::from(x)).collect())
    }

    /// `a_k = (k+1)²` for `k = 1..=len`.
    pub fn squares(len: usize) -> Self {
        Self::new(
            (1..=len as u64)
                .map(|k| BigUint::from((k + 1) * (k + 1)))
                .collect(),
        )
        .expect("squares are at least 4")
    }

    /// Number of stored `a_k`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_k`, `1 ≤ k ≤ len`.
    pub fn a(&self, k: usize) -> &BigUint {
        assert!(k >= 1 && k <= self.a.len(), "a_{k} outside the window");
        &self.a[k - 1]
    }

    /// `γ(n)`, `1 ≤ n ≤ len + 1`.
    pub fn gamma(&self, n: usize) -> &BigUint {
        assert!(
            n >= 1 && n <= self.gamma.len(),
            "gamma({n}) outside the window"
        );
        &self.gamma[n - 1]
    }

    pub fn bases(&self) -> &[BigUint] {
        &self.a
    }

    /// `Σ 1/a_k` over the window, a summability diagnostic.
    pub fn reciprocal_sum(&self) -> f64 {
        self.a
            .iter()
            .map(|x| 1.0 / x.to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Least `k ≤ len + 1` with `γ(k)·x ∈ ℤ`, i.e. the depth at which `x`
    /// is seen to lie in `Q`.
    pub fn q_depth(&self, x: &BigRational) -> Option<usize> {
        (1..=self.gamma.len()).find(|&k| (x * self.gamma_q(k)).is_integer())
    }

    fn gamma_q(&self, k: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.gamma(k).clone()))
    }
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// `⟨r⟩`, distance to the nearest integer.
pub(crate) fn nearest_int_dist(r: &BigRational) -> BigRational {
    let f = frac(r);
    let g = BigRational::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

pub(crate) fn check_unit_interval(x: &BigRational) -> Result<()> {
    if x.is_negative() || *x >= BigRational::one() {
        return Err(Error::out_of_range(
            "x",
            x.to_f64().unwrap_or(f64::NAN),
            "0 <= x < 1",
        ));
    }
    Ok(())
}

pub(crate) fn int_q(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}
