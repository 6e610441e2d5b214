use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use crate::report::CliError;

/// Inline JSON when the argument looks like JSON, otherwise a file path.
pub fn load_params(arg: &str) -> Result<Value, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(serde_json::from_str(arg)?);
    }
    let path = Path::new(arg);
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn parse<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Params(e.to_string()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Literal {
    Text(String),
    Int(i64),
}

impl Literal {
    fn parse<T: FromStr>(self) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        let s = match self {
            Literal::Text(s) => s,
            Literal::Int(n) => n.to_string(),
        };
        s.trim()
            .parse()
            .map_err(|e: T::Err| format!("cannot parse {s:?}: {e}"))
    }
}

/// Rational written as `"p/q"`, `"p"` or an integer literal.
pub fn rational<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    Literal::deserialize(d)?
        .parse()
        .map_err(serde::de::Error::custom)
}

/// Integer written as a decimal string or a JSON integer.
pub fn integer<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    Literal::deserialize(d)?
        .parse()
        .map_err(serde::de::Error::custom)
}
