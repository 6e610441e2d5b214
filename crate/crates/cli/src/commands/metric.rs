use std::f64::consts::PI;

use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::{dist_p, quotient_dist, quotient_iso, rho_p, PExponent, RealSeq};

use super::{default_p, Outcome};
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    /// Real representatives in turns.
    x: Vec<f64>,
    y: Vec<f64>,
    #[serde(default = "default_p")]
    p: f64,
}

const TOL: f64 = 1e-12;

fn sandwich(name: &str, lower: f64, d: f64) -> Check {
    let ok = PI * lower <= d + TOL && d <= 2.0 * PI * lower + TOL;
    Check::new(name, ok, format!("pi*{lower} <= {d} <= 2pi*{lower}"))
}

pub fn run(params: Value) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let exp = PExponent::new(p.p)?;
    let x = RealSeq::new(p.x, exp)?;
    let y = RealSeq::new(p.y, exp)?;
    let (wx, wy) = (quotient_iso(&x), quotient_iso(&y));
    let d = dist_p(&wx, &wy, exp);
    let rho = rho_p(&wx, &wy, exp);
    let d_star = quotient_dist(&x, &y)?;
    let checks = vec![
        sandwich("chord metric against quotient metric", d_star, d),
        sandwich("chord metric against angle metric", rho, d),
    ];
    Ok(Outcome::new(
        json!({
            "x": wx,
            "y": wy,
            "dist_p": d,
            "rho_p": rho,
            "quotient_dist": d_star,
        }),
        checks,
    ))
}
