use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::monothetic::DEFAULT_CAP;
use quasitorus::{approx_power, build_generator, dist_p, kronecker_search, PExponent, TorusSeq};

use super::{default_p, Outcome};
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    #[serde(default = "default_n")]
    n_max: usize,
    #[serde(default = "default_cap")]
    cap: u64,
    /// Target to approximate, in turns.
    omega: Option<Vec<f64>>,
    epsilon: Option<f64>,
    #[serde(default = "default_p")]
    p: f64,
    /// Random targets per level for the covering-bound check.
    #[serde(default = "default_covering")]
    covering_samples: usize,
}

fn default_n() -> usize {
    3
}

fn default_cap() -> u64 {
    DEFAULT_CAP
}

fn default_covering() -> usize {
    200
}

pub fn run(params: Value, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let spec = build_generator(p.n_max, p.cap)?;
    let mut checks = vec![Check::new(
        "generator conditions",
        spec.check().is_ok(),
        spec.check()
            .err()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "monotone, bounded".into()),
    )];
    for n in 2..=spec.len() {
        let k_hat = spec.k_bound(n).expect("bound per level");
        let alphas = &spec.alphas[..n - 1];
        let tol = 0.5f64.powi(n as i32);
        let mut misses = 0;
        for _ in 0..p.covering_samples {
            let y: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>()).collect();
            if kronecker_search(alphas, &y, tol, k_hat)?.exhausted {
                misses += 1;
            }
        }
        checks.push(Check::new(
            &format!("covering bound k_{n} on random targets"),
            misses == 0,
            format!(
                "{} targets, {misses} beyond k = {k_hat}",
                p.covering_samples
            ),
        ));
    }
    let mut results = json!({ "generator": spec });
    match (&p.omega, p.epsilon) {
        (Some(turns), Some(eps)) => {
            let exp = PExponent::new(p.p)?;
            let omega = TorusSeq::from_turns(turns)?;
            let r = approx_power(&omega, eps, &spec, exp, p.cap)?;
            let d = dist_p(&omega, &spec.power(r.k), exp);
            checks.push(Check::new(
                "direct distance below epsilon",
                d < eps,
                format!("dist = {d}"),
            ));
            let tol = 0.5f64.powi(r.level as i32);
            checks.push(Check::new(
                "Kronecker residuals",
                r.residuals.iter().all(|&e| e < tol),
                format!("below {tol}"),
            ));
            results["approximation"] = serde_json::to_value(&r)?;
            results["power"] = serde_json::to_value(spec.power(r.k))?;
        }
        (None, None) => {}
        _ => return Err(CliError::Params("omega and epsilon go together".into())),
    }
    Ok(Outcome::new(results, checks))
}
