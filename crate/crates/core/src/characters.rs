//! Finitely supported integer sequences `Z₀^∞`, viewed as characters of the
//! torus sequence groups, and the window sets `A(k, m)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::{Angle, TorusSeq};

/// A finitely supported integer sequence `n = (n₁, n₂, …)`, indexed from 1.
///
/// Serialises as a sparse JSON map `{"index": coeff}`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, i64>", into = "BTreeMap<usize, i64>")]
pub struct Character {
    coeffs: BTreeMap<usize, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    /// `±e_m`.
    pub fn unit(m: usize, sign: i64) -> Result<Self> {
        Self::from_pairs(&[(m, sign.signum())])
    }

    /// Build from `(index, coeff)` pairs; repeated indices are summed.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for &(m, n) in pairs {
            if m == 0 {
                return Err(Error::Invalid("character indices start at 1".into()));
            }
            *coeffs.entry(m).or_insert(0) += n;
        }
        coeffs.retain(|_, n| *n != 0);
        Ok(Character { coeffs })
    }

    /// Dense coefficients `(n₁, …, n_k)` starting at index 1.
    pub fn from_dense(values: &[i64]) -> Self {
        Character {
            coeffs: values
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(i, &n)| (i + 1, n))
                .collect(),
        }
    }

    pub fn get(&self, m: usize) -> i64 {
        self.coeffs.get(&m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(index, coeff)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&m, &n)| (m, n))
    }

    /// `l(χ)`, the number of nonzero coordinates.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut coeffs = self.coeffs.clone();
        for (m, n) in other.iter() {
            *coeffs.entry(m).or_insert(0) += n;
        }
        coeffs.retain(|_, n| *n != 0);
        Character { coeffs }
    }

    pub fn neg(&self) -> Character {
        Character {
            coeffs: self.coeffs.iter().map(|(&m, &n)| (m, -n)).collect(),
        }
    }

    /// Move every coefficient `by` places to the right.
    pub fn shift_right(&self, by: usize) -> Character {
        Character {
            coeffs: self.coeffs.iter().map(|(&m, &n)| (m + by, n)).collect(),
        }
    }

    pub fn l1(&self) -> u64 {
        self.coeffs.values().map(|n| n.unsigned_abs()).sum()
    }

    pub fn sup(&self) -> u64 {
        self.coeffs
            .values()
            .map(|n| n.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

impl TryFrom<BTreeMap<usize, i64>> for Character {
    type Error = Error;

    fn try_from(map: BTreeMap<usize, i64>) -> Result<Self> {
        let pairs: Vec<_> = map.into_iter().collect();
        Character::from_pairs(&pairs)
    }
}

impl From<Character> for BTreeMap<usize, i64> {
    fn from(c: Character) -> Self {
        c.coeffs
    }
}

/// Which norm [`norm`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// `|χ|_q = (Σ|nᵢ|^q)^{1/q}`, `q ≥ 1`.
    Lq(f64),
    /// `|χ|₁`.
    One,
    /// `|χ|_b = sup |nᵢ|`.
    Sup,
}

pub fn norm(chi: &Character, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::One => Ok(chi.l1() as f64),
        NormKind::Sup => Ok(chi.sup() as f64),
        NormKind::Lq(q) if q >= 1.0 && q.is_finite() => {
            if chi.is_zero() {
                return Ok(0.0);
            }
            let s: f64 = chi
                .iter()
                .map(|(_, n)| (n.unsigned_abs() as f64).powf(q))
                .sum();
            Ok(s.powf(1.0 / q))
        }
        NormKind::Lq(q) => Err(Error::out_of_range("q", q, "q >= 1")),
    }
}

/// Phase `t` of `(χ, ω) = e^{2πit}`, `t = Σ nₖ φₖ mod 1`.
pub fn pair(chi: &Character, omega: &TorusSeq) -> Angle {
    let t: f64 = chi
        .iter()
        .map(|(m, n)| n as f64 * omega.get(m).value())
        .sum();
    Angle::wrapped(t)
}

/// `A(k, m)`: characters supported on indices `> m` with `|χ|₁ ≤ k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSet {
    pub k: usize,
    pub m: usize,
}

impl WindowSet {
    pub fn new(k: usize, m: usize) -> Self {
        WindowSet { k, m }
    }

    pub fn contains(&self, chi: &Character) -> bool {
        chi.min_index().is_none_or(|i| i > self.m) && chi.l1() <= self.k as u64 + 1
    }
}

/// All members of `A(k, m)` supported on `(m, support_max]`, in a fixed order.
pub fn window_enumerate(w: WindowSet, support_max: usize) -> Result<Vec<Character>> {
    if support_max <= w.m {
        return Err(Error::Invalid(format!(
            "empty index range ({}, {support_max}]",
            w.m
        )));
    }
    let dims = support_max - w.m;
    let mut out = Vec::new();
    let mut buf = vec![0i64; dims];
    enumerate_l1_ball(&mut buf, 0, w.k as i64 + 1, &mut |v| {
        let pairs: Vec<_> = v
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(i, &n)| (w.m + 1 + i, n))
            .collect();
        out.push(Character::from_pairs(&pairs).expect("indices are positive"));
    });
    Ok(out)
}

/// Visit every integer vector with `Σ|vᵢ| ≤ budget` in the slots from `pos` on.
pub fn enumerate_l1_ball<F: FnMut(&[i64])>(
    buf: &mut [i64],
    pos: usize,
    budget: i64,
    visit: &mut F,
) {
    if pos == buf.len() {
        visit(buf);
        return;
    }
    for n in -budget..=budget {
        buf[pos] = n;
        enumerate_l1_ball(buf, pos + 1, budget - n.abs(), visit);
    }
    buf[pos] = 0;
}

/// Visit every integer vector in the box `|vᵢ| ≤ bound`.
pub fn enumerate_box<F: FnMut(&[i64])>(buf: &mut [i64], pos: usize, bound: i64, visit: &mut F) {
    if pos == buf.len() {
        visit(buf);
        return;
    }
    for n in -bound..=bound {
        buf[pos] = n;
        enumerate_box(buf, pos + 1, bound, visit);
    }
    buf[pos] = 0;
}
