//! Characters of `G_p`: integers, their digit forms, and the restriction of
//! torus-sequence characters `n = (n₁, …, n_s)` to the embedded `G_p`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{decimal, frac, int_q, GammaSeq};
use crate::error::{Error, Result};

/// Eventual pattern of a digit character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// `ω_k = 0` past the head.
    Zeros,
    /// `ω_k = a_k - 1` past the head.
    MaxMinusOne,
}

/// A character `(ω_k)` of `G_p` in digit form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitChar {
    #[serde(with = "decimal::vec")]
    pub head: Vec<BigUint>,
    pub tail: Tail,
}

impl DigitChar {
    pub fn validate(&self, base: &GammaSeq) -> Result<()> {
        if self.head.len() > base.len() {
            return Err(Error::LengthMismatch(self.head.len(), base.len()));
        }
        for (i, w) in self.head.iter().enumerate() {
            if w >= base.a(i + 1) {
                return Err(Error::Invalid(format!(
                    "head digit {} = {w} not below a_{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Mixed-radix digits of `n ≥ 0`, least significant first, no trailing zeros.
fn mixed_radix(n: &BigUint, base: &GammaSeq) -> Result<Vec<BigUint>> {
    if n >= base.gamma(base.len() + 1) {
        return Err(Error::WindowOverflow(n.to_string()));
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut k = 1;
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(base.a(k));
        out.push(r);
        rest = q;
        k += 1;
    }
    Ok(out)
}

/// Digit form of an integer character.
///
/// `n > 0` gives its mixed-radix digits with a zero tail. For `n < 0` with
/// `|n|` of digit length `m`, the head is `a_k - 1 - h_k` where `h` are the
/// digits of `|n| - 1` padded to length `m`, followed by the `a_k - 1` tail;
/// formally `Σ_{k>m}(a_k - 1)γ(k) = -γ(m+1)`, so the value is `-|n|`.
pub fn int_to_digitchar(n: &BigInt, base: &GammaSeq) -> Result<DigitChar> {
    match n.sign() {
        Sign::NoSign => Ok(DigitChar {
            head: Vec::new(),
            tail: Tail::Zeros,
        }),
        Sign::Plus => Ok(DigitChar {
            head: mixed_radix(n.magnitude(), base)?,
            tail: Tail::Zeros,
        }),
        Sign::Minus => {
            let m = mixed_radix(n.magnitude(), base)?.len();
            let mut h = mixed_radix(&(n.magnitude() - 1u32), base)?;
            h.resize(m, BigUint::zero());
            let head = h
                .iter()
                .enumerate()
                .map(|(i, hk)| base.a(i + 1) - 1u32 - hk)
                .collect();
            Ok(DigitChar {
                head,
                tail: Tail::MaxMinusOne,
            })
        }
    }
}

/// Integer value of a digit character: `Σ ω_k γ(k)`, minus `γ(m+1)` for the
/// `a_k - 1` tail.
pub fn digitchar_to_int(chi: &DigitChar, base: &GammaSeq) -> Result<BigInt> {
    chi.validate(base)?;
    let head: BigInt = chi
        .head
        .iter()
        .enumerate()
        .map(|(i, w)| BigInt::from(w * base.gamma(i + 1)))
        .sum();
    Ok(match chi.tail {
        Tail::Zeros => head,
        Tail::MaxMinusOne => head - BigInt::from(base.gamma(chi.head.len() + 1).clone()),
    })
}

fn require_q(x: &BigRational, base: &GammaSeq) -> Result<usize> {
    base.q_depth(x).ok_or(Error::NotInQ {
        depth: base.len() + 1,
    })
}

/// Phase of `(n, z) = z^n` for `z = e^{2πix}`, `x ∈ Q`: `n·x mod 1` in `[0, 1)`.
pub fn pair_gp(n: &BigInt, x: &BigRational, base: &GammaSeq) -> Result<BigRational> {
    require_q(x, base)?;
    Ok(frac(&(x * BigRational::from_integer(n.clone()))))
}

/// Phase of `(χ, z) = z^{Σ ω_k γ(k)}` for `x ∈ Q`, in `[0, 1)`.
///
/// Terms with `γ(k)x ∈ ℤ` vanish, so only indices below the Q-depth of `x`
/// contribute, including the `a_k - 1` tail up to that depth.
pub fn pair_digitchar(chi: &DigitChar, x: &BigRational, base: &GammaSeq) -> Result<BigRational> {
    chi.validate(base)?;
    let depth = require_q(x, base)?;
    let mut acc = BigRational::zero();
    for k in 1..depth {
        let w = match chi.head.get(k - 1) {
            Some(w) => w.clone(),
            None => match chi.tail {
                Tail::Zeros => break,
                Tail::MaxMinusOne => base.a(k) - 1u32,
            },
        };
        acc += int_q(&w) * frac(&(x * int_q(base.gamma(k))));
    }
    Ok(frac(&acc))
}

/// A character `n = (n₁, …, n_s, 0, …)` of the torus sequence group, seen on
/// the embedded `G_p`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "SparseRepr", into = "SparseRepr")]
pub struct SparseGammaChar {
    coeffs: BTreeMap<usize, BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct SparseRepr(#[serde(with = "decimal::map")] BTreeMap<usize, BigInt>);

impl TryFrom<SparseRepr> for SparseGammaChar {
    type Error = Error;

    fn try_from(r: SparseRepr) -> Result<Self> {
        SparseGammaChar::new(r.0)
    }
}

impl From<SparseGammaChar> for SparseRepr {
    fn from(c: SparseGammaChar) -> Self {
        SparseRepr(c.coeffs)
    }
}

impl SparseGammaChar {
    pub fn new(mut coeffs: BTreeMap<usize, BigInt>) -> Result<Self> {
        if coeffs.contains_key(&0) {
            return Err(Error::Invalid("character indices start at 1".into()));
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(SparseGammaChar { coeffs })
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for &(k, n) in pairs {
            *coeffs.entry(k).or_insert_with(BigInt::zero) += n;
        }
        Self::new(coeffs)
    }

    /// `e_s`.
    pub fn unit(s: usize) -> Result<Self> {
        Self::from_pairs(&[(s, 1)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    fn check_window(&self, base: &GammaSeq) -> Result<()> {
        match self.max_index() {
            Some(s) if s > base.len() + 1 => Err(Error::IndexOutOfRange {
                index: s,
                len: base.len() + 1,
            }),
            _ => Ok(()),
        }
    }
}

/// `π₀(n) = Σ n_k γ(k)`.
pub fn quotient_reduce(chi: &SparseGammaChar, base: &GammaSeq) -> Result<BigInt> {
    chi.check_window(base)?;
    Ok(chi
        .iter()
        .map(|(k, n)| n * BigInt::from(base.gamma(k).clone()))
        .sum())
}

/// `n ∈ G_p^⊥` iff `Σ n_k γ(k) = 0`.
pub fn annihilator_test(chi: &SparseGammaChar, base: &GammaSeq) -> Result<bool> {
    quotient_reduce(chi, base).map(|v| v.is_zero())
}

/// Phase of `n` on `S_p(z)`: `Σ n_k·(γ(k)x mod 1) mod 1`, in `[0, 1)`.
pub fn pair_sparse(chi: &SparseGammaChar, x: &BigRational, base: &GammaSeq) -> Result<BigRational> {
    chi.check_window(base)?;
    let acc: BigRational = chi
        .iter()
        .map(|(k, n)| BigRational::from_integer(n.clone()) * frac(&(x * int_q(base.gamma(k)))))
        .fold(BigRational::zero(), |a, b| a + b);
    Ok(frac(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn head(c: &DigitChar) -> Vec<u64> {
        c.head.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn digitchar_examples() {
        let b = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
        let c = int_to_digitchar(&5.into(), &b).unwrap();
        assert_eq!((head(&c), c.tail), (vec![1, 1], Tail::Zeros));
        let c = int_to_digitchar(&0.into(), &b).unwrap();
        assert_eq!((head(&c), c.tail), (vec![], Tail::Zeros));
        let c = int_to_digitchar(&(-5).into(), &b).unwrap();
        assert_eq!((head(&c), c.tail), (vec![3, 7], Tail::MaxMinusOne));
        assert_eq!(digitchar_to_int(&c, &b).unwrap(), BigInt::from(-5));
        // -4 has a zero low digit, where a_1 - ω_1 would leave the digit range
        let c = int_to_digitchar(&(-4).into(), &b).unwrap();
        assert_eq!(head(&c), vec![0, 8]);
        assert_eq!(digitchar_to_int(&c, &b).unwrap(), BigInt::from(-4));
        assert!(int_to_digitchar(&576.into(), &b).is_err());
        assert!(int_to_digitchar(&(-576).into(), &b).is_err());
    }

    #[test]
    fn int_round_trip() {
        let b = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
        for n in -575i64..=575 {
            let c = int_to_digitchar(&n.into(), &b).unwrap();
            c.validate(&b).unwrap();
            assert_eq!(digitchar_to_int(&c, &b).unwrap(), BigInt::from(n), "n={n}");
        }
    }

    #[test]
    fn pairing_examples() {
        let b = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
        let x = q(1, 4);
        assert_eq!(pair_gp(&5.into(), &x, &b).unwrap(), q(1, 4));
        assert_eq!(pair_gp(&0.into(), &x, &b).unwrap(), q(0, 1));
        assert_eq!(pair_gp(&(-5).into(), &x, &b).unwrap(), q(3, 4));
        for n in [5i64, -5] {
            let c = int_to_digitchar(&n.into(), &b).unwrap();
            assert_eq!(
                pair_digitchar(&c, &x, &b).unwrap(),
                pair_gp(&n.into(), &x, &b).unwrap()
            );
        }
        assert!(matches!(
            pair_gp(&1.into(), &q(1, 5), &b),
            Err(Error::NotInQ { .. })
        ));
    }

    #[test]
    fn annihilator_examples() {
        let b = GammaSeq::from_u64(&[4, 9]).unwrap();
        let c = SparseGammaChar::from_pairs(&[(1, 4), (2, -1)]).unwrap();
        assert!(annihilator_test(&c, &b).unwrap());
        assert!(!annihilator_test(&SparseGammaChar::unit(1).unwrap(), &b).unwrap());
        let b3 = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
        let c = SparseGammaChar::from_pairs(&[(1, 36), (3, -1)]).unwrap();
        assert!(annihilator_test(&c, &b3).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let b = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
        assert_eq!(
            quotient_reduce(&SparseGammaChar::unit(2).unwrap(), &b).unwrap(),
            4.into()
        );
        let c = SparseGammaChar::from_pairs(&[(1, 4), (2, -1)]).unwrap();
        assert_eq!(quotient_reduce(&c, &b).unwrap(), 0.into());
        let c = SparseGammaChar::from_pairs(&[(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(quotient_reduce(&c, &b).unwrap(), 41.into());
        assert!(quotient_reduce(&SparseGammaChar::unit(5).unwrap(), &b).is_err());
    }

    #[test]
    fn sparse_json() {
        let c = SparseGammaChar::from_pairs(&[(1, 4), (2, -1)]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"1":"4","2":"-1"}"#);
        let back: SparseGammaChar = serde_json::from_str(r#"{"1":4,"2":"-1","3":0}"#).unwrap();
        assert_eq!(back, c);
        let d = DigitChar {
            head: vec![3u32.into(), 7u32.into()],
            tail: Tail::MaxMinusOne,
        };
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"head":["3","7"],"tail":"max_minus_one"}"#
        );
    }
}
