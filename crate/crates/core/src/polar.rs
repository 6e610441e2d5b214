//! Polars of the unit balls `U_ε = {ω : ρ_p(ω, 1) < ε}` of `T^H_p`, their
//! bipolars, and a witness that the quasi-convex hull of `U_ε` is unbounded
//! for `p > 1`.
//!
//! A character `χ` lies in the polar `U_ε^▷` when `Re(χ, ω) ≥ 0` on all of
//! `U_ε`, which is the phase condition `|Σ nᵢφᵢ| ≤ 1/4`. For `p > 1` this is
//! exactly `4ε|χ|_q ≤ 1` with `q` the Hölder conjugate; for `p = 1` only the
//! sandwich `Z_{4ε} ⊂ U_ε^▷ ⊂ Z_{2ε}` between sup-norm balls is available.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::characters::{enumerate_box, norm, Character, NormKind};
use crate::error::{Error, Result};
use crate::torus::{dist_p, wrap, Angle, PExponent, TorusSeq};

/// Relative slack applied to closed inequalities so ties land on the closed side.
pub const TIE_SLACK: f64 = 1e-12;

/// Upper limit on the number of live states in [`bipolar_sup`].
pub const MAX_DP_STATES: usize = 4_000_000;

/// Largest window a [`hull_witness`] is allowed to allocate.
pub const MAX_WITNESS_LEN: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolarVerdict {
    Member,
    NonMember,
    /// `p = 1` only: between the two sup-norm bounds.
    BoundaryZone,
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.25 {
        Ok(())
    } else {
        Err(Error::out_of_range("epsilon", eps, "0 < epsilon < 1/4"))
    }
}

/// `floor`, snapping values within rounding noise of an integer onto it.
pub(crate) fn floor_snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}

/// Hölder conjugate for the duality operations, which need `p > 1`.
fn conjugate(p: PExponent) -> Result<f64> {
    p.conjugate()
        .ok_or_else(|| Error::out_of_range("p", p.value(), "p > 1"))
}

/// Closed-form membership of `χ` in `U_ε^▷`.
pub fn polar_member_closed(chi: &Character, eps: f64, p: PExponent) -> Result<PolarVerdict> {
    check_epsilon(eps)?;
    if p.value() == 1.0 {
        let b = chi.sup() as f64;
        return Ok(if b <= (1.0 + TIE_SLACK) / (4.0 * eps) {
            PolarVerdict::Member
        } else if b > (1.0 + TIE_SLACK) / (2.0 * eps) {
            PolarVerdict::NonMember
        } else {
            PolarVerdict::BoundaryZone
        });
    }
    let q = conjugate(p)?;
    let nq = norm(chi, NormKind::Lq(q))?;
    Ok(if 4.0 * eps * nq <= 1.0 + TIE_SLACK {
        PolarVerdict::Member
    } else {
        PolarVerdict::NonMember
    })
}

/// The supremum of `Σ nᵢφᵢ` over the `ρ_p` ball of radius `ε`, evaluated at
/// the Hölder extremal point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarSup {
    /// `Σ nᵢφᵢ` at the extremal point.
    pub value: f64,
    /// `ε|χ|_q`.
    pub bound: f64,
    /// `φᵢ = ε·sign(nᵢ)(|nᵢ|/|χ|_q)^{q/p}`, on the `ε`-sphere.
    pub extremal: TorusSeq,
}

impl PolarSup {
    /// Whether the supremum stays inside the right half plane.
    pub fn within_quarter(&self) -> bool {
        self.value <= 0.25 * (1.0 + TIE_SLACK)
    }
}

pub fn polar_sup_oracle(chi: &Character, eps: f64, p: PExponent) -> Result<PolarSup> {
    check_epsilon(eps)?;
    let q = conjugate(p)?;
    if chi.is_zero() {
        return Err(Error::Invalid(
            "zero character: the supremum is trivially 0".into(),
        ));
    }
    let nq = norm(chi, NormKind::Lq(q))?;
    let len = chi.max_index().expect("nonzero");
    let mut phis = vec![Angle::ZERO; len];
    let mut value = 0.0;
    for (m, n) in chi.iter() {
        let mag = n.unsigned_abs() as f64;
        let phi = eps * (n.signum() as f64) * (mag / nq).powf(q / p.value());
        value += n as f64 * phi;
        phis[m - 1] = Angle::new(phi)?;
    }
    let bound = eps * nq;
    if (value - bound).abs() > 1e-12 * bound.max(1.0) {
        return Err(Error::Postcondition(format!(
            "extremal value {value} differs from eps*|chi|_q = {bound}"
        )));
    }
    Ok(PolarSup {
        value,
        bound,
        extremal: TorusSeq::new(phis),
    })
}

/// `a = [1/(4ε)] - 1` and `b = [(1/(4ε))^q]`, so that
/// `A(a, 0) ⊂ {χ : 4ε|χ|_q ≤ 1} ⊂ A(b, 0)`.
pub fn lemma1_bounds(eps: f64, q: f64) -> Result<(u64, u64)> {
    check_epsilon(eps)?;
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::out_of_range("q", q, "q >= 1"));
    }
    let r = 1.0 / (4.0 * eps);
    let a = floor_snap(r) as u64 - 1;
    let b = floor_snap(r.powf(q)) as u64;
    Ok((a, b))
}

/// Result of checking the two window inclusions over a coefficient box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionCheck {
    pub a: u64,
    pub b: u64,
    pub checked: usize,
    /// Members of `A(a, 0)` missing from the middle set, then members of the
    /// middle set missing from `A(b, 0)`.
    pub violations: Vec<Character>,
}

impl InclusionCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify the window inclusions on every `χ` supported on `{1..support_max}`
/// with `|nᵢ| ≤ coeff_max`.
pub fn lemma1_check(
    eps: f64,
    q: f64,
    support_max: usize,
    coeff_max: i64,
) -> Result<InclusionCheck> {
    let (a, b) = lemma1_bounds(eps, q)?;
    let mut buf = vec![0i64; support_max];
    let mut checked = 0;
    let mut violations = Vec::new();
    enumerate_box(&mut buf, 0, coeff_max, &mut |v| {
        checked += 1;
        let chi = Character::from_dense(v);
        let l1 = chi.l1();
        let middle = 4.0 * eps * norm(&chi, NormKind::Lq(q)).expect("q >= 1") <= 1.0 + TIE_SLACK;
        if (l1 <= a + 1 && !middle) || (middle && l1 > b + 1) {
            violations.push(chi);
        }
    });
    Ok(InclusionCheck {
        a,
        b,
        checked,
        violations,
    })
}

/// Maximum of `|(χ, ω)|` (canonical phase) over the polar, with a maximiser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipolarSup {
    pub value: f64,
    pub maximiser: Character,
    /// Number of DP states explored.
    pub states: usize,
}

impl BipolarSup {
    /// `ω` lies in the bipolar of `U_ε` iff the maximum phase is at most `1/4`.
    pub fn certifies(&self) -> bool {
        self.value <= 0.25
    }
}

/// Per-coordinate cost `|n|^q` and the total budget `(1/(4ε))^q`, exact in
/// integers when `q` is an integer.
#[derive(Debug, Clone, Copy)]
enum Budget {
    Integer { q: u32, total: u64 },
    Real { q: f64, total: f64 },
}

impl Budget {
    fn new(eps: f64, q: f64) -> Self {
        let r = 1.0 / (4.0 * eps);
        let qr = q.round();
        if (q - qr).abs() < 1e-12 && qr <= 16.0 {
            Budget::Integer {
                q: qr as u32,
                total: floor_snap(r.powf(qr)) as u64,
            }
        } else {
            Budget::Real {
                q,
                total: r.powf(q) * (1.0 + TIE_SLACK),
            }
        }
    }

    /// Cheapest cost of spreading an integer sum `s` over `g` coordinates
    /// (as evenly as possible, which is optimal for convex `|n|^q`).
    fn spread_cost(&self, s: u64, g: u64) -> f64 {
        let (t, r) = (s / g, s % g);
        match *self {
            Budget::Integer { q, .. } => {
                let c = (g - r) as u128 * (t as u128).pow(q) + r as u128 * ((t + 1) as u128).pow(q);
                c as f64
            }
            Budget::Real { q, .. } => {
                (g - r) as f64 * (t as f64).powf(q) + r as f64 * ((t + 1) as f64).powf(q)
            }
        }
    }

    fn total(&self) -> f64 {
        match *self {
            Budget::Integer { total, .. } => total as f64,
            Budget::Real { total, .. } => total,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct DpState {
    phase: f64,
    cost: f64,
    parent: usize,
    multiplier: i64,
}

/// Maximise the canonical phase `|Σ nᵢφᵢ|` over integer `χ` supported on
/// `ω`'s window with `|χ|_q ≤ 1/(4ε)`.
///
/// Coordinates sharing the same angle are merged: a group of `g` equal angles
/// contributes `s·φ` for an integer `s`, at the cheapest cost of spreading `s`
/// over `g` coordinates. The dynamic program then runs over groups with one
/// state per reachable phase, keeping the cheapest way to reach it.
pub fn bipolar_sup(omega: &TorusSeq, eps: f64, p: PExponent, coeff_cap: u64) -> Result<BipolarSup> {
    check_epsilon(eps)?;
    let q = conjugate(p)?;
    let radius = 1.0 / (4.0 * eps);
    let required = (radius * (1.0 - 1e-12)).ceil() as u64;
    if coeff_cap < required {
        return Err(Error::CoefficientCapTooSmall {
            cap: coeff_cap,
            required,
        });
    }
    let budget = Budget::new(eps, q);
    let per_coord_max = coeff_cap.min(floor_snap(radius) as u64);

    // group coordinates by exact angle
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut slot: HashMap<u64, usize> = HashMap::new();
    for (i, a) in omega.angles().iter().enumerate() {
        if a.value() == 0.0 {
            continue;
        }
        let g = *slot.entry(a.value().to_bits()).or_insert_with(|| {
            groups.push((a.value(), Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(i + 1);
    }

    let mut layers: Vec<Vec<DpState>> = vec![vec![DpState {
        phase: 0.0,
        cost: 0.0,
        parent: usize::MAX,
        multiplier: 0,
    }]];
    let mut explored = 1usize;
    for (phi, members) in &groups {
        let g = members.len() as u64;
        let mut options: Vec<(i64, f64)> = vec![(0, 0.0)];
        for s in 1u64.. {
            if s.div_ceil(g) > per_coord_max {
                break;
            }
            let c = budget.spread_cost(s, g);
            if c > budget.total() {
                break;
            }
            options.push((s as i64, c));
            options.push((-(s as i64), c));
        }
        let prev = layers.last().expect("nonempty");
        let mut next: Vec<DpState> = Vec::new();
        let mut index: HashMap<u64, usize> = HashMap::new();
        for (pi, st) in prev.iter().enumerate() {
            for &(s, c) in &options {
                let cost = st.cost + c;
                if cost > budget.total() {
                    continue;
                }
                let phase = wrap(st.phase + s as f64 * phi);
                let cand = DpState {
                    phase,
                    cost,
                    parent: pi,
                    multiplier: s,
                };
                match index.get(&phase.to_bits()) {
                    Some(&j) if next[j].cost <= cost => {}
                    Some(&j) => next[j] = cand,
                    None => {
                        index.insert(phase.to_bits(), next.len());
                        next.push(cand);
                    }
                }
            }
        }
        explored += next.len();
        if next.len() > MAX_DP_STATES {
            return Err(Error::StateBudget {
                limit: MAX_DP_STATES,
            });
        }
        layers.push(next);
    }

    let last = layers.last().expect("nonempty");
    let (best_idx, best) = last
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.phase.abs().total_cmp(&b.1.phase.abs()))
        .expect("at least the zero state");
    let value = best.phase.abs();

    // walk back through the layers to recover the multipliers
    let mut pairs = Vec::new();
    let mut idx = best_idx;
    for layer in (1..layers.len()).rev() {
        let st = layers[layer][idx];
        let members = &groups[layer - 1].1;
        let s = st.multiplier;
        if s != 0 {
            let g = members.len() as u64;
            let (t, r) = (s.unsigned_abs() / g, s.unsigned_abs() % g);
            for (j, &m) in members.iter().enumerate() {
                let mag = t + u64::from((j as u64) < r);
                if mag > 0 {
                    pairs.push((m, s.signum() * mag as i64));
                }
            }
        }
        idx = st.parent;
    }
    Ok(BipolarSup {
        value,
        maximiser: Character::from_pairs(&pairs)?,
        states: explored,
    })
}

/// Explicit point of the bipolar of `U_ε` that is far from the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupWitness {
    pub p: f64,
    pub epsilon: f64,
    pub radius: f64,
    /// `[(1/(4ε))^q]`, the largest `|χ|₁` in the polar.
    pub m0: u64,
    /// Common angle of every coordinate.
    pub delta: f64,
    /// Window length.
    pub n: u64,
    /// `d_p(ω, 1)`.
    pub distance: f64,
    pub bipolar_sup: f64,
    #[serde(skip)]
    pub omega: TorusSeq,
}

/// For `p = 1`: a per-coordinate bound on points of the bipolar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedCertificate {
    pub epsilon: f64,
    /// `[1/(4ε)]`: characters `M·(±eⱼ)` with this coefficient lie in the polar.
    pub m: u64,
    /// `1/(4M)`: every bipolar point has `|φⱼ| ≤` this in each coordinate.
    pub per_coordinate_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullWitness {
    Unbounded(BlowupWitness),
    Bounded(BoundedCertificate),
}

/// Build a bipolar point at `d_p`-distance at least `radius` from the identity
/// (`p > 1`), or the bounded certificate (`p = 1`).
///
/// For `p > 1` the point is `ω = (δ, …, δ)` of length `N` with
/// `m₀ = [(1/(4ε))^q]`, `δ = (1 - 10⁻⁶)/(4m₀)` and `N` the least integer with
/// `2 sin(πδ) N^{1/p} ≥ radius`. Both postconditions are re-checked (the
/// bipolar one by [`bipolar_sup`]) before returning.
pub fn hull_witness(p: PExponent, eps: f64, radius: f64) -> Result<HullWitness> {
    check_epsilon(eps)?;
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::out_of_range("radius", radius, "finite radius >= 0"));
    }
    if p.value() == 1.0 {
        let m = floor_snap(1.0 / (4.0 * eps)) as u64;
        return Ok(HullWitness::Bounded(BoundedCertificate {
            epsilon: eps,
            m,
            per_coordinate_bound: 1.0 / (4.0 * m as f64),
        }));
    }
    let q = conjugate(p)?;
    let m0 = floor_snap((1.0 / (4.0 * eps)).powf(q)) as u64;
    let delta = (1.0 - 1e-6) / (4.0 * m0 as f64);
    let chord = 2.0 * (std::f64::consts::PI * delta).sin();
    let reach = |n: u64| chord * (n as f64).powf(1.0 / p.value());
    let estimate = (radius / chord).powf(p.value()).ceil();
    if !(estimate <= MAX_WITNESS_LEN as f64) {
        return Err(Error::Invalid(format!(
            "radius {radius} needs about {estimate:e} coordinates"
        )));
    }
    let mut n = estimate as u64;
    while reach(n) < radius {
        n += 1;
    }
    while n > 0 && reach(n - 1) >= radius {
        n -= 1;
    }
    let omega = TorusSeq::constant(Angle::new(delta)?, n as usize);
    let distance = dist_p(&omega, &TorusSeq::identity(), p);
    let cap = (1.0 / (4.0 * eps) * (1.0 - 1e-12)).ceil() as u64;
    let sup = bipolar_sup(&omega, eps, p, cap)?;
    if !sup.certifies() {
        return Err(Error::Postcondition(format!(
            "bipolar supremum {} exceeds 1/4",
            sup.value
        )));
    }
    if distance < radius {
        return Err(Error::Postcondition(format!(
            "distance {distance} below radius {radius}"
        )));
    }
    Ok(HullWitness::Unbounded(BlowupWitness {
        p: p.value(),
        epsilon: eps,
        radius,
        m0,
        delta,
        n,
        distance,
        bipolar_sup: sup.value,
        omega,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(pairs: &[(usize, i64)]) -> Character {
        Character::from_pairs(pairs).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let two = PExponent::TWO;
        assert_eq!(
            polar_member_closed(&chi(&[(1, 1)]), 0.05, two).unwrap(),
            PolarVerdict::Member
        );
        assert_eq!(
            polar_member_closed(&chi(&[(1, 5), (2, 2)]), 0.05, two).unwrap(),
            PolarVerdict::NonMember
        );
        assert_eq!(
            polar_member_closed(&Character::zero(), 0.2, two).unwrap(),
            PolarVerdict::Member
        );
        // tie 4ε|χ|₂ = 1 is a member: |(3,4)|₂ = 5, ε = 0.05
        assert_eq!(
            polar_member_closed(&chi(&[(1, 3), (2, 4)]), 0.05, two).unwrap(),
            PolarVerdict::Member
        );
        assert!(polar_member_closed(&chi(&[(1, 1)]), 0.25, two).is_err());
        assert!(polar_member_closed(&chi(&[(1, 1)]), 0.1, PExponent::SUP).is_err());
    }

    #[test]
    fn p_one_sandwich() {
        let one = PExponent::ONE;
        // 1/(4ε) = 5, 1/(2ε) = 10
        assert_eq!(
            polar_member_closed(&chi(&[(1, 5)]), 0.05, one).unwrap(),
            PolarVerdict::Member
        );
        assert_eq!(
            polar_member_closed(&chi(&[(1, 6)]), 0.05, one).unwrap(),
            PolarVerdict::BoundaryZone
        );
        assert_eq!(
            polar_member_closed(&chi(&[(1, 10)]), 0.05, one).unwrap(),
            PolarVerdict::BoundaryZone
        );
        assert_eq!(
            polar_member_closed(&chi(&[(1, -11)]), 0.05, one).unwrap(),
            PolarVerdict::NonMember
        );
    }

    #[test]
    fn oracle_examples() {
        let two = PExponent::TWO;
        let s = polar_sup_oracle(&chi(&[(1, 1)]), 0.05, two).unwrap();
        assert!((s.value - 0.05).abs() < 1e-15);
        let s = polar_sup_oracle(&chi(&[(1, 3), (2, 4)]), 0.1, two).unwrap();
        assert!((s.value - 0.5).abs() < 1e-12);
        let s = polar_sup_oracle(&chi(&[(1, 1), (2, 1)]), 0.1, two).unwrap();
        assert!((s.value - 0.1 * 2f64.sqrt()).abs() < 1e-12);
        let r = crate::torus::rho_p(&s.extremal, &TorusSeq::identity(), two);
        assert!((r - 0.1).abs() < 1e-12);
        assert!(polar_sup_oracle(&Character::zero(), 0.1, two).is_err());
        assert!(polar_sup_oracle(&chi(&[(1, 1)]), 0.1, PExponent::ONE).is_err());
    }

    #[test]
    fn oracle_extremal_on_sphere_for_p3() {
        let p = PExponent::new(3.0).unwrap();
        let s = polar_sup_oracle(&chi(&[(1, 2), (3, -5), (4, 1)]), 0.07, p).unwrap();
        let r = crate::torus::rho_p(&s.extremal, &TorusSeq::identity(), p);
        assert!((r - 0.07).abs() < 1e-12);
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_bounds(0.06, 2.0).unwrap(), (3, 17));
        assert_eq!(lemma1_bounds(0.2, 1.0).unwrap(), (0, 1));
        assert_eq!(lemma1_bounds(0.25f64.next_down(), 2.0).unwrap(), (0, 1));
        assert_eq!(lemma1_bounds(0.05, 2.0).unwrap(), (4, 25));
        assert!(lemma1_bounds(0.3, 2.0).is_err());
        assert!(lemma1_bounds(0.1, 0.5).is_err());
    }

    #[test]
    fn lemma1_small_enumeration() {
        let c = lemma1_check(0.06, 2.0, 3, 4).unwrap();
        assert_eq!(c.checked, 9usize.pow(3));
        assert!(c.holds());
    }

    #[test]
    fn bipolar_examples() {
        let two = PExponent::TWO;
        let s = bipolar_sup(&TorusSeq::identity(), 0.05, two, 5).unwrap();
        assert_eq!(s.value, 0.0);
        assert!(s.maximiser.is_zero());

        let w = TorusSeq::constant(Angle::new(0.01).unwrap(), 25);
        let s = bipolar_sup(&w, 0.05, two, 5).unwrap();
        assert!((s.value - 0.25).abs() < 1e-12);
        assert_eq!(s.maximiser.l1(), 25);
        assert_eq!(s.maximiser.sup(), 1);

        // exhaustive scan over n₁ ∈ [-5, 5]: 5·0.3 = 3/2 has phase -1/2
        let w = TorusSeq::from_turns(&[0.3]).unwrap();
        let scan = (-5i64..=5)
            .map(|n| wrap(n as f64 * 0.3).abs())
            .fold(0.0, f64::max);
        let s = bipolar_sup(&w, 0.05, two, 5).unwrap();
        assert_eq!(s.value, scan);
        assert!((s.value - 0.5).abs() < 1e-15);
        assert_eq!(s.maximiser.get(1).abs(), 5);
        assert!(matches!(
            bipolar_sup(&w, 0.05, two, 4),
            Err(Error::CoefficientCapTooSmall {
                cap: 4,
                required: 5
            })
        ));
    }

    #[test]
    fn bipolar_matches_brute_force_on_small_windows() {
        let two = PExponent::TWO;
        let w = TorusSeq::from_turns(&[0.013, -0.07, 0.013, 0.21]).unwrap();
        for eps in [0.05, 0.1, 0.2] {
            let s = bipolar_sup(&w, eps, two, 5).unwrap();
            let mut best = 0.0f64;
            let mut buf = vec![0i64; 4];
            enumerate_box(&mut buf, 0, 5, &mut |v| {
                let c = Character::from_dense(v);
                if 4.0 * eps * norm(&c, NormKind::Lq(2.0)).unwrap() <= 1.0 + TIE_SLACK {
                    best = best.max(crate::characters::pair(&c, &w).value().abs());
                }
            });
            assert!(
                (s.value - best).abs() < 1e-12,
                "eps {eps}: dp {} brute {best}",
                s.value
            );
            let found = crate::characters::pair(&s.maximiser, &w).value().abs();
            assert!((found - s.value).abs() < 1e-12);
        }
    }

    #[test]
    fn witness_examples() {
        match hull_witness(PExponent::TWO, 0.05, 10.0).unwrap() {
            HullWitness::Unbounded(w) => {
                assert_eq!(w.m0, 25);
                assert_eq!(w.n, 25339);
                assert!(w.distance >= 10.0 && w.distance < 10.001);
                assert!(w.bipolar_sup <= 0.25);
                assert_eq!(w.omega.len(), 25339);
            }
            other => panic!("unexpected {other:?}"),
        }
        match hull_witness(PExponent::TWO, 0.05, 0.0).unwrap() {
            HullWitness::Unbounded(w) => {
                assert_eq!(w.n, 0);
                assert!(w.omega.is_identity());
            }
            other => panic!("unexpected {other:?}"),
        }
        match hull_witness(PExponent::ONE, 0.05, 100.0).unwrap() {
            HullWitness::Bounded(c) => {
                assert_eq!(c.m, 5);
                assert!((c.per_coordinate_bound - 0.05).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(hull_witness(PExponent::TWO, 0.05, 1e12).is_err());
    }
}
