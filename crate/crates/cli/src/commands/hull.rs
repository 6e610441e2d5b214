use serde::Deserialize;
use serde_json::Value;

use quasitorus::{
    bipolar_sup, dist_p, hull_witness, pair, Angle, Character, HullWitness, PExponent, TorusSeq,
};

use super::{default_p, Outcome};
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    #[serde(default = "default_p")]
    p: f64,
    epsilon: f64,
    radius: f64,
}

pub fn run(params: Value) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let exp = PExponent::new(p.p)?;
    let w = hull_witness(exp, p.epsilon, p.radius)?;
    let mut checks = Vec::new();
    match &w {
        HullWitness::Unbounded(b) => {
            let omega = TorusSeq::constant(Angle::new(b.delta)?, b.n as usize);
            let d = dist_p(&omega, &TorusSeq::identity(), exp);
            checks.push(Check::new(
                "distance reaches the radius",
                d >= p.radius,
                format!("dist = {d}"),
            ));
            let cap = (1.0 / (4.0 * p.epsilon) * (1.0 - 1e-12)).ceil() as u64;
            let sup = bipolar_sup(&omega, p.epsilon, exp, cap)?;
            checks.push(Check::new(
                "bipolar certificate",
                sup.certifies(),
                format!("max phase {} over {} states", sup.value, sup.states),
            ));
        }
        HullWitness::Bounded(c) => {
            // any angle beyond the bound is pushed out of the right half plane by some n·e_1, |n| ≤ m
            let m = c.m as i64;
            let mut violations = 0;
            let probes = 20_000;
            for i in 0..probes {
                let phi = -0.5 + i as f64 / probes as f64;
                let w = TorusSeq::from_turns(&[phi])?;
                let inside =
                    (-m..=m).all(|n| pair(&Character::from_dense(&[n]), &w).value().abs() <= 0.25);
                if inside && phi.abs() > c.per_coordinate_bound + 1e-15 {
                    violations += 1;
                }
            }
            checks.push(Check::new(
                "per-coordinate bound by probes",
                violations == 0,
                format!("{probes} probes, {violations} violations"),
            ));
        }
    }
    Ok(Outcome::new(serde_json::to_value(&w)?, checks))
}
