//! Instance file formats.
//!
//! * plain: whitespace separated decimal tokens, delta first; lines whose
//!   first non-blank character is `#` are ignored.
//! * csv: a `position` header followed by one value per line; delta comes
//!   from `--delta`.
//! * json: `{"delta": "2", "points": ["0", "1"]}` with every number a string.

use std::path::Path;

use clap::ValueEnum;
use dispersal::{normalize_instance, Instance};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Plain,
    Csv,
    Json,
}

impl InputFormat {
    pub fn detect(path: &str) -> Self {
        match Path::new(path).extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            Some(e) if e.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Plain,
        }
    }
}

pub fn parse_instance(text: &str, format: InputFormat, delta_flag: Option<&str>) -> Result<Instance, CliError> {
    let (delta, points) = match format {
        InputFormat::Plain => {
            let mut tokens = text
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .flat_map(str::split_whitespace)
                .map(str::to_string);
            let delta = tokens
                .next()
                .ok_or_else(|| CliError::Input("empty instance: expected delta".into()))?;
            (delta, tokens.collect::<Vec<_>>())
        }
        InputFormat::Csv => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            match lines.next() {
                Some(h) if h.eq_ignore_ascii_case("position") => {}
                other => {
                    return Err(CliError::Input(format!(
                        "csv header must be \"position\", found {:?}",
                        other.unwrap_or("")
                    )))
                }
            }
            let delta = delta_flag
                .ok_or_else(|| CliError::Usage("csv input needs --delta".into()))?
                .to_string();
            (delta, lines.map(str::to_string).collect())
        }
        InputFormat::Json => {
            let v: Value =
                serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid json: {e}")))?;
            let as_decimal = |v: &Value, what: &str| match v {
                Value::String(s) => Ok(s.clone()),
                _ => Err(CliError::Input(format!("{what} must be a decimal string"))),
            };
            let delta = match delta_flag {
                Some(d) => d.to_string(),
                None => as_decimal(v.get("delta").unwrap_or(&Value::Null), "delta")?,
            };
            let points = v
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Input("json needs a \"points\" array".into()))?
                .iter()
                .map(|p| as_decimal(p, "point"))
                .collect::<Result<Vec<_>, _>>()?;
            (delta, points)
        }
    };
    let delta = delta_flag.map(str::to_string).unwrap_or(delta);
    Ok(normalize_instance(&points, &delta)?)
}

/// Renders an instance in the plain format.
pub fn format_plain(inst: &Instance, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&inst.format(inst.delta));
    out.push('\n');
    for p in inst.to_input_order(&inst.initial) {
        out.push_str(&inst.format(p));
        out.push('\n');
    }
    out
}
