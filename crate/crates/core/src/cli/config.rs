//! Line-oriented run configuration.
//!
//! ```text
//! # comments run to end of line
//! wavelength 1.0
//! slit -2 1        # center width [weight]
//! slit  2 1
//! samples 2001
//! jacobian off
//! paper_literal off
//! ```

use thiserror::Error;

use crate::distribution::literal_scale;
use crate::slit::{SlitSpec, SlitSystem};
use crate::SlitError;

pub const DEFAULT_SAMPLES: usize = 2001;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: SlitSystem,
    pub samples: usize,
    pub jacobian: bool,
    pub paper_literal: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid slit system: {0}")]
    Semantic(#[from] SlitError),
}

fn syntax(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Syntax { line, message: message.into() }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut wavelength: Option<f64> = None;
    let mut samples: Option<usize> = None;
    let mut jacobian: Option<bool> = None;
    let mut paper_literal: Option<bool> = None;
    let mut slits = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut fields = content.split_whitespace();
        let Some(key) = fields.next() else {
            continue;
        };
        let args: Vec<&str> = fields.collect();
        match key {
            "wavelength" => {
                let [v] = args[..] else {
                    return Err(syntax(line, "wavelength takes exactly one value"));
                };
                set_once(&mut wavelength, parse_float(line, v)?, line, key)?;
            }
            "slit" => {
                let (center, width, weight) = match args[..] {
                    [c, w] => (parse_float(line, c)?, parse_float(line, w)?, 1.0),
                    [c, w, g] => (parse_float(line, c)?, parse_float(line, w)?, parse_float(line, g)?),
                    _ => return Err(syntax(line, "slit takes <center> <width> [weight]")),
                };
                slits.push(SlitSpec { center, width, weight });
            }
            "samples" => {
                let [v] = args[..] else {
                    return Err(syntax(line, "samples takes exactly one value"));
                };
                let n: usize = v
                    .parse()
                    .map_err(|_| syntax(line, format!("expected a positive integer, got {v:?}")))?;
                if n < 3 || n.is_multiple_of(2) {
                    return Err(syntax(line, format!("samples must be odd and at least 3, got {n}")));
                }
                set_once(&mut samples, n, line, key)?;
            }
            "jacobian" | "paper_literal" => {
                let [v] = args[..] else {
                    return Err(syntax(line, format!("{key} takes on|off")));
                };
                let flag = match v {
                    "on" => true,
                    "off" => false,
                    other => return Err(syntax(line, format!("{key} expects on|off, got {other:?}"))),
                };
                let slot = if key == "jacobian" { &mut jacobian } else { &mut paper_literal };
                set_once(slot, flag, line, key)?;
            }
            other => return Err(syntax(line, format!("unknown key {other:?}"))),
        }
    }

    let system = SlitSystem::new(slits, wavelength.unwrap_or(1.0))?;
    let paper_literal = paper_literal.unwrap_or(false);
    literal_scale(&system, paper_literal)?;
    Ok(RunConfig {
        system,
        samples: samples.unwrap_or(DEFAULT_SAMPLES),
        jacobian: jacobian.unwrap_or(false),
        paper_literal,
    })
}

fn parse_float(line: usize, s: &str) -> Result<f64, ConfigError> {
    let v: f64 = s.parse().map_err(|_| syntax(line, format!("expected a number, got {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(syntax(line, format!("expected a finite number, got {s:?}")))
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), ConfigError> {
    if slot.is_some() {
        return Err(syntax(line, format!("{key} given more than once")));
    }
    *slot = Some(value);
    Ok(())
}
