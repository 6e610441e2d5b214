use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::adic::{
    annihilator_test, digitchar_to_int, digits_of, embed_sp_exact, from_digits, int_to_digitchar,
    norm_gp_exact, pair_digitchar, pair_gp, pair_sparse, q_approx, quotient_reduce, r0_dist,
    AdicDigits, GammaSeq, SparseGammaChar,
};
use quasitorus::{dist_p, PExponent, TorusSeq};

use super::Outcome;
use crate::input::{integer, parse, rational};
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(untagged)]
enum Base {
    /// `a_k = (k+1)²` for `k ≤ squares`.
    Squares {
        squares: usize,
    },
    Explicit(GammaSeq),
}

#[derive(Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum Op {
    Digits {
        #[serde(deserialize_with = "rational")]
        x: BigRational,
        depth: usize,
    },
    FromDigits {
        digits: AdicDigits,
    },
    R0 {
        #[serde(deserialize_with = "rational")]
        x: BigRational,
        #[serde(deserialize_with = "rational")]
        y: BigRational,
        depth: usize,
    },
    QApprox {
        digits: AdicDigits,
        epsilon: f64,
    },
    Norm {
        #[serde(deserialize_with = "rational")]
        x: BigRational,
        p: f64,
        depth: usize,
    },
    Embed {
        #[serde(deserialize_with = "rational")]
        x: BigRational,
        depth: usize,
    },
    DigitChar {
        #[serde(deserialize_with = "integer")]
        n: BigInt,
    },
    Pair {
        #[serde(deserialize_with = "integer")]
        n: BigInt,
        #[serde(deserialize_with = "rational")]
        x: BigRational,
    },
    Annihilator {
        chi: SparseGammaChar,
    },
    Quotient {
        chi: SparseGammaChar,
    },
}

#[derive(Deserialize)]
struct Params {
    base: Base,
    #[serde(flatten)]
    op: Op,
}

/// Random points `j/γ(len+1)` of `Q` seen at full window depth.
fn sample_q(base: &GammaSeq, count: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let den = base.gamma(base.len() + 1).clone();
    (0..count)
        .map(|_| {
            let j = BigUint::from(rng.random::<u64>()) % &den;
            BigRational::new(BigInt::from(j), BigInt::from(den.clone()))
        })
        .collect()
}

fn s<T: ToString>(x: &T) -> Value {
    json!(x.to_string())
}

pub fn run(params: Value, rng: &mut ChaCha8Rng) -> Result<Outcome, CliError> {
    let p: Params = parse(params)?;
    let base = match p.base {
        Base::Squares { squares } => {
            if squares == 0 {
                return Err(CliError::Params("squares must be positive".into()));
            }
            GammaSeq::squares(squares)
        }
        Base::Explicit(g) => g,
    };
    let mut checks = Vec::new();
    let results = match p.op {
        Op::Digits { x, depth } => {
            let e = digits_of(&x, &base, depth)?;
            let back = from_digits(&e.digits, &base) + &e.remainder;
            checks.push(Check::new(
                "digits plus remainder give x",
                back == x,
                back.to_string(),
            ));
            serde_json::to_value(&e)?
        }
        Op::FromDigits { digits } => {
            digits.validate(&base)?;
            let x = from_digits(&digits, &base);
            let again = digits_of(&x, &base, digits.len())?;
            checks.push(Check::new(
                "digits recovered exactly",
                again.exact && again.digits == digits,
                "",
            ));
            json!({ "x": s(&x) })
        }
        Op::R0 { x, y, depth } => {
            let r = r0_dist(&x, &y, &base, depth)?;
            let back = r0_dist(&y, &x, &base, depth)?;
            checks.push(Check::new("symmetric", r == back, back.to_string()));
            json!({ "r0": s(&r) })
        }
        Op::QApprox { digits, epsilon } => {
            let r = q_approx(&digits, &base, epsilon)?;
            let value = from_digits(&digits, &base);
            let r0 = r0_dist(&value, &r.x_n, &base, base.len() + 1)?;
            let eps = BigRational::from_float(epsilon).expect("finite epsilon");
            checks.push(Check::new("r0(x, x_N) < epsilon", r0 < eps, r0.to_string()));
            checks.push(Check::new(
                "a_(N-1) > 1/epsilon",
                BigRational::from_integer(BigInt::from(base.a(r.n - 1).clone())) * eps
                    > BigRational::from_integer(1.into()),
                base.a(r.n - 1).to_string(),
            ));
            json!({ "x": s(&value), "approximation": r })
        }
        Op::Norm { x, p, depth } => {
            let exp = PExponent::new(p)?;
            let v = norm_gp_exact(&x, &base, exp, depth)?;
            let e = embed_sp_exact(&x, &base, depth)?;
            let d = dist_p(&e, &TorusSeq::identity(), exp);
            checks.push(Check::new(
                "equals distance of the embedding",
                (d - v).abs() <= 1e-12 * v.max(1.0),
                d.to_string(),
            ));
            json!({ "norm": v })
        }
        Op::Embed { x, depth } => {
            let e = embed_sp_exact(&x, &base, depth)?;
            let neg = if x.is_zero() {
                x.clone()
            } else {
                BigRational::from_integer(1.into()) - &x
            };
            let inv = embed_sp_exact(&neg, &base, depth)?;
            let d = dist_p(&e.mul(&inv), &TorusSeq::identity(), PExponent::SUP);
            checks.push(Check::new(
                "embedding of -x is the inverse",
                d < 1e-12,
                d.to_string(),
            ));
            json!({ "angles": e })
        }
        Op::DigitChar { n } => {
            let c = int_to_digitchar(&n, &base)?;
            let back = digitchar_to_int(&c, &base)?;
            checks.push(Check::new("inverts to n", back == n, back.to_string()));
            let mut bad = 0;
            for x in sample_q(&base, 32, rng) {
                if pair_gp(&n, &x, &base)? != pair_digitchar(&c, &x, &base)? {
                    bad += 1;
                }
            }
            checks.push(Check::new(
                "digit pairing matches z^n",
                bad == 0,
                format!("32 samples, {bad} mismatches"),
            ));
            serde_json::to_value(&c)?
        }
        Op::Pair { n, x } => {
            let phase = pair_gp(&n, &x, &base)?;
            let c = int_to_digitchar(&n, &base)?;
            let digit = pair_digitchar(&c, &x, &base)?;
            checks.push(Check::new(
                "digit form agrees",
                digit == phase,
                digit.to_string(),
            ));
            json!({ "phase": s(&phase), "digit_char": c })
        }
        Op::Annihilator { chi } | Op::Quotient { chi } => {
            let reduced = quotient_reduce(&chi, &base)?;
            let ann = annihilator_test(&chi, &base)?;
            checks.push(Check::new(
                "annihilator iff reduced to 0",
                ann == reduced.is_zero(),
                reduced.to_string(),
            ));
            let mut bad = 0;
            let xs = sample_q(&base, 32, rng);
            for x in &xs {
                let trivial = pair_sparse(&chi, x, &base)?.is_zero();
                let expected = pair_gp(&reduced, x, &base)?.is_zero();
                if trivial != expected {
                    bad += 1;
                }
            }
            checks.push(Check::new(
                "pairing factors through the reduction",
                bad == 0,
                format!("{} samples, {bad} mismatches", xs.len()),
            ));
            json!({ "annihilator": ann, "reduced": s(&reduced) })
        }
    };
    Ok(Outcome::new(
        json!({ "base": base, "result": results }),
        checks,
    ))
}
