mod adic;
mod hull;
mod kakutani;
mod metric;
mod monothetic;
mod polar;
mod windows;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::report::{CliError, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Chord, angle and quotient metrics with their sandwich checks.
    Metric,
    /// Hellinger partial products and the equivalence/singularity verdict.
    Kakutani,
    /// Polar membership of a character, closed form against the oracle.
    Polar,
    /// Far-away bipolar point (p > 1) or bounded certificate (p = 1).
    Hull,
    /// Generator construction and approximation by its powers.
    Monothetic,
    /// a-adic digits, Q-approximation, characters and annihilators.
    Adic,
    /// Window inclusions around the polar of a ball.
    Lemma1,
    /// T-sequence neighbourhood membership and window inclusion.
    Tseq,
}

pub fn dispatch(cmd: Command, params: Value, seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, inputs, out) = match cmd {
        Command::Metric => ("metric", params.clone(), metric::run(params)?),
        Command::Kakutani => ("kakutani", params.clone(), kakutani::run(params, &mut rng)?),
        Command::Polar => ("polar", params.clone(), polar::run(params, &mut rng)?),
        Command::Hull => ("hull", params.clone(), hull::run(params)?),
        Command::Monothetic => (
            "monothetic",
            params.clone(),
            monothetic::run(params, &mut rng)?,
        ),
        Command::Adic => ("adic", params.clone(), adic::run(params, &mut rng)?),
        Command::Lemma1 => ("lemma1", params.clone(), windows::run_lemma1(params)?),
        Command::Tseq => ("tseq", params.clone(), windows::run_tseq(params)?),
    };
    let report = Report::new(name, seed, inputs, out.results, out.checks);
    Ok(match out.csv {
        Some(csv) => report.with_csv(csv),
        None => report,
    })
}

/// What a command hands back to the report builder.
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<crate::report::Check>,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(results: Value, checks: Vec<crate::report::Check>) -> Self {
        Outcome {
            results,
            checks,
            csv: None,
        }
    }
}

pub(crate) fn default_p() -> f64 {
    2.0
}
