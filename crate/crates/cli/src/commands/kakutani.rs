use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::{hellinger_closed, kakutani_classify, DensityFamily, Thresholds, TorusSeq};

use super::Outcome;
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Family {
    LinearShift,
    ExpConstant { c: f64 },
    ExpFamily { c: Vec<f64> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Shift {
    Identity,
    Turns {
        values: Vec<f64>,
    },
    /// `φₙ = phi` for every `n`.
    Constant {
        phi: f64,
    },
    /// `φₙ = 1/(n + offset)`.
    Harmonic {
        offset: f64,
    },
    /// `φₙ = scale·uₙ/n` with `uₙ` uniform in `[-1, 1)` from the seed.
    Random {
        scale: f64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    family: Family,
    shift: Shift,
    n_max: usize,
    #[serde(default)]
    thresholds: Thresholds,
    /// Include every partial product in the JSON results.
    #[serde(default)]
    full_trace: bool,
}

fn shift_turns(shift: &Shift, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match shift {
        Shift::Identity => Vec::new(),
        Shift::Turns { values } => values.clone(),
        Shift::Constant { phi } => vec![*phi; n],
        Shift::Harmonic { offset } => (1..=n).map(|k| 1.0 / (k as f64 + offset)).collect(),
        Shift::Random { scale } => (1..=n)
            .map(|k| scale * rng.random_range(-1.0..1.0) / k as f64)
            .collect(),
    }
}

pub fn run(params: Value, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let family = match &p.family {
        Family::LinearShift => DensityFamily::LinearShift,
        Family::ExpConstant { c } => DensityFamily::exp_constant(*c, p.n_max)?,
        Family::ExpFamily { c } => DensityFamily::exp(c.clone())?,
    };
    let shift = TorusSeq::from_turns(&shift_turns(&p.shift, p.n_max, rng))?;
    let trace = kakutani_classify(&family, &shift, p.n_max, p.thresholds)?;

    let products: Vec<f64> = trace.partial_products().collect();
    let mut checks = vec![
        Check::new(
            "partial products positive",
            products.iter().all(|&x| x > 0.0),
            format!(
                "min {:e}",
                products.iter().copied().fold(f64::INFINITY, f64::min)
            ),
        ),
        Check::new(
            "partial products nonincreasing",
            products.windows(2).all(|w| w[1] <= w[0]),
            format!("{} products", products.len()),
        ),
    ];
    if let DensityFamily::ExpFamily { c } = &family {
        // quadratic bounds on every factor bracket the final product
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        for n in 1..=p.n_max {
            let x = (c[n - 1] * shift.get(n).value()).powi(2);
            lo *= (1.0 - x / 8.0).max(0.0);
            hi *= 1.0 - x / 32.0;
        }
        let fp = trace.final_product;
        let tol = 1e-9 * hi;
        checks.push(Check::new(
            "final product within quadratic factor bounds",
            lo - tol <= fp && fp <= hi + tol,
            format!("{lo:e} <= {fp:e} <= {hi:e}"),
        ));
        let direct: f64 = (1..=p.n_max)
            .map(|n| {
                let a = shift.get(n);
                if a.value() == 0.0 {
                    Ok(1.0)
                } else {
                    hellinger_closed(c[n - 1], a)
                }
            })
            .product::<Result<f64, _>>()?;
        checks.push(Check::new(
            "final product matches direct evaluation",
            (direct - fp).abs() <= 1e-12 * direct.max(1e-300).max(fp),
            format!("{direct:e}"),
        ));
    }

    let mut results = json!({
        "verdict": trace.verdict,
        "final_product": trace.final_product,
        "tail_rel_decrease": trace.tail_rel_decrease,
        "n_max": p.n_max,
    });
    if p.full_trace {
        results["trace"] = serde_json::to_value(&trace.trace)?;
    }
    let csv = trace.to_csv();
    Ok(Outcome {
        results,
        checks,
        csv: Some(csv),
    })
}
