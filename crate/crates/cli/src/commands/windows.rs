use serde::Deserialize;
use serde_json::{json, Value};

use quasitorus::{
    lemma1_check, tseq_member, tseq_window_inclusion, window_enumerate, Character,
    TSeqNeighborhood, WindowSet,
};

use super::Outcome;
use crate::input::parse;
use crate::report::{Check, CliError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Lemma1Params {
    epsilon: f64,
    q: f64,
    #[serde(default = "five")]
    support_max: usize,
    #[serde(default = "five_i")]
    coeff_max: i64,
}

fn five() -> usize {
    5
}

fn five_i() -> i64 {
    5
}

pub fn run_lemma1(params: Value) -> Result<Outcome, CliError> {
    let p: Lemma1Params = parse(params)?;
    let r = lemma1_check(p.epsilon, p.q, p.support_max, p.coeff_max)?;
    let checks = vec![Check::new(
        "window inclusions",
        r.holds(),
        format!(
            "{} characters, {} violations",
            r.checked,
            r.violations.len()
        ),
    )];
    Ok(Outcome::new(serde_json::to_value(&r)?, checks))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TseqParams {
    thresholds: TSeqNeighborhood,
    chi: Option<Character>,
    k: Option<usize>,
    #[serde(default = "twenty")]
    support_max: usize,
}

fn twenty() -> usize {
    20
}

pub fn run_tseq(params: Value) -> Result<Outcome, CliError> {
    let p: TseqParams = parse(params)?;
    if p.chi.is_none() && p.k.is_none() {
        return Err(CliError::Params("give chi, k, or both".into()));
    }
    let mut results = json!({});
    let mut checks = Vec::new();
    if let Some(chi) = &p.chi {
        let member = tseq_member(chi, &p.thresholds);
        // members stay members when the support moves right
        let shifted = tseq_member(&chi.shift_right(1), &p.thresholds);
        checks.push(Check::new(
            "membership monotone under right shift",
            !member || shifted,
            format!("shifted member: {shifted}"),
        ));
        results["member"] = json!(member);
    }
    if let Some(k) = p.k {
        let m = tseq_window_inclusion(&p.thresholds, k, p.support_max)?;
        let window = window_enumerate(WindowSet::new(k, m), p.support_max)?;
        let all = window.iter().all(|c| tseq_member(c, &p.thresholds));
        checks.push(Check::new(
            "window contained in the neighbourhood",
            all,
            format!("{} characters of A({k}, {m})", window.len()),
        ));
        if m > 0 {
            let below = window_enumerate(WindowSet::new(k, m - 1), p.support_max)?;
            let fails = below.iter().any(|c| !tseq_member(c, &p.thresholds));
            checks.push(Check::new(
                "m is least",
                fails,
                format!("A({k}, {}) escapes", m - 1),
            ));
        }
        results["m"] = json!(m);
    }
    Ok(Outcome::new(results, checks))
}
