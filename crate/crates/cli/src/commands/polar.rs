use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::{
    norm, pair, polar_member_closed, polar_sup_oracle, rho_p, Character, NormKind, PExponent,
    PolarVerdict, TorusSeq,
};

use super::{default_p, Outcome};
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    chi: Character,
    epsilon: f64,
    #[serde(default = "default_p")]
    p: f64,
    /// Random points of the ball used for the soundness check.
    #[serde(default = "default_samples")]
    samples: usize,
}

fn default_samples() -> usize {
    1000
}

/// A random point with `ρ_p(ω, 1) < ε` on the support of `chi`.
fn sample_ball(len: usize, eps: f64, p: PExponent, rng: &mut ChaCha8Rng) -> TorusSeq {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.random_range(-0.5..0.5)).collect();
        let w = TorusSeq::from_turns(&v).expect("finite");
        let r = rho_p(&w, &TorusSeq::identity(), p);
        if r == 0.0 {
            continue;
        }
        let s = eps * rng.random::<f64>() / r;
        if s >= 1.0 {
            continue;
        }
        let w = TorusSeq::from_turns(&v.iter().map(|x| x * s).collect::<Vec<_>>()).expect("finite");
        if rho_p(&w, &TorusSeq::identity(), p) < eps {
            return w;
        }
    }
}

/// Scale `direction` so its phase against `chi` is strictly between 1/4 and 1/2.
fn escape_point(direction: &TorusSeq, value: f64) -> TorusSeq {
    let s = (0.25 + value.min(0.5)) / 2.0 / value;
    TorusSeq::from_turns(
        &direction
            .angles()
            .iter()
            .map(|a| a.value() * s)
            .collect::<Vec<_>>(),
    )
    .expect("finite")
}

pub fn run(params: Value, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let exp = PExponent::new(p.p)?;
    let eps = p.epsilon;
    let verdict = polar_member_closed(&p.chi, eps, exp)?;
    let len = p.chi.max_index().unwrap_or(0);
    let mut checks = Vec::new();
    let mut results = json!({ "verdict": verdict });

    // extremal direction: the Hölder point for p > 1, a largest coordinate for p = 1
    let extremal = if exp.value() > 1.0 {
        let q = exp.conjugate().expect("p > 1");
        let holder = eps * norm(&p.chi, NormKind::Lq(q))?;
        results["holder_value"] = json!(holder);
        results["q"] = json!(q);
        if p.chi.is_zero() {
            None
        } else {
            let oracle = polar_sup_oracle(&p.chi, eps, exp)?;
            checks.push(Check::new(
                "closed form agrees with oracle",
                (verdict == PolarVerdict::Member) == oracle.within_quarter(),
                format!("oracle sup {}", oracle.value),
            ));
            results["oracle"] = serde_json::to_value(&oracle)?;
            Some((oracle.extremal, oracle.value))
        }
    } else {
        let b = p.chi.sup() as f64;
        results["sup_norm"] = json!(b);
        results["member_bound"] = json!(1.0 / (4.0 * eps));
        results["non_member_bound"] = json!(1.0 / (2.0 * eps));
        p.chi
            .iter()
            .max_by_key(|(_, n)| n.unsigned_abs())
            .map(|(m, n)| {
                let mut v = vec![0.0; m];
                v[m - 1] = eps * n.signum() as f64;
                (TorusSeq::from_turns(&v).expect("finite"), b * eps)
            })
    };

    match verdict {
        PolarVerdict::Member => {
            let mut worst = 0.0f64;
            for _ in 0..p.samples {
                let w = sample_ball(len.max(1), eps, exp, rng);
                worst = worst.max(pair(&p.chi, &w).value().abs());
            }
            checks.push(Check::new(
                "sampled phases stay in [-1/4, 1/4]",
                worst <= 0.25,
                format!("{} samples, max |phase| {worst}", p.samples),
            ));
        }
        PolarVerdict::NonMember => {
            let (dir, value) = extremal.expect("nonmembers are nonzero");
            let w = escape_point(&dir, value);
            let phase = pair(&p.chi, &w).value().abs();
            let r = rho_p(&w, &TorusSeq::identity(), exp);
            checks.push(Check::new(
                "escaping point inside the ball",
                r < eps && phase > 0.25,
                format!("rho {r}, |phase| {phase}"),
            ));
            results["escape_point"] = serde_json::to_value(&w)?;
        }
        PolarVerdict::BoundaryZone => {
            let b = p.chi.sup() as f64;
            checks.push(Check::new(
                "boundary zone between the sup-norm bounds",
                4.0 * eps * b > 1.0 && 2.0 * eps * b <= 1.0 + 1e-12,
                format!("|chi|_b = {b}"),
            ));
        }
    }
    Ok(Outcome::new(results, checks))
}
