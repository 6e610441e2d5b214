use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use quasitorus::ErrorClass;

pub const EXIT_POSTCONDITION: u8 = 2;
pub const EXIT_PARAMETER: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] quasitorus::Error),

    #[error("bad parameters: {0}")]
    Params(String),

    #[error("{0}: {1}")]
    Io(String, std::io::Error),

    #[error("{0}")]
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Parameter => EXIT_PARAMETER,
                ErrorClass::Budget => EXIT_BUDGET,
                ErrorClass::Postcondition => EXIT_POSTCONDITION,
            },
            CliError::Params(_) | CliError::Io(..) | CliError::Format(_) => EXIT_PARAMETER,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Params(e.to_string())
    }
}

/// One re-executed postcondition.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub inputs: Value,
    pub results: Value,
    pub verification: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    pub fn new(
        command: &'static str,
        seed: u64,
        inputs: Value,
        results: Value,
        verification: Vec<Check>,
    ) -> Self {
        let passed = verification.iter().all(|c| c.passed);
        Report {
            command,
            seed,
            inputs,
            results,
            verification,
            passed,
            timing: None,
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.timing = Some(Timing {
            elapsed_ms: d.as_secs_f64() * 1e3,
        });
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.verification.iter().filter(|c| !c.passed)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)
                    .map_err(|e| CliError::Format(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv.clone().ok_or_else(|| {
                CliError::Format(format!(
                    "csv output is not available for `{}`",
                    self.command
                ))
            }),
        }
    }
}
