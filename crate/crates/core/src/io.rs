//! Text file formats for spectra and states.
//!
//! Spectrum file: one energy per non-comment line, `#` starts a comment line.
//! Entries use the rational grammar (`num/den` or an integer); if any entry is
//! a decimal or exponent float instead, the whole file is read as floats and
//! must go through tolerance-based rationalization.
//!
//! State file: a line `amps:` followed by one rational per line, then an
//! optional `step: <integer>` line.

use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::numkernel::{parse_rational, Rational, Unbounded};
use crate::spectrum::{EnergySpectrum, SpectrumError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: cannot parse {text:?}")]
    Parse { line: usize, text: String },
    #[error("no entries found")]
    Empty,
    #[error("state file is missing the `amps:` header")]
    MissingAmps,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Parsed contents of a spectrum file.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumInput {
    Exact(EnergySpectrum),
    Floats(Vec<f64>),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_spectrum(text: &str) -> Result<SpectrumInput, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    if lines.is_empty() {
        return Err(FormatError::Empty);
    }
    let exact: Result<Vec<Rational>, usize> = lines
        .iter()
        .map(|&(n, l)| parse_rational(l).map_err(|_| n))
        .collect();
    match exact {
        Ok(values) => Ok(SpectrumInput::Exact(EnergySpectrum::new(values)?)),
        Err(_) => {
            let floats = lines
                .iter()
                .map(|&(n, l)| {
                    l.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| FormatError::Parse { line: n, text: l.to_string() })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            Ok(SpectrumInput::Floats(floats))
        }
    }
}

pub fn write_spectrum(energies: &[Rational], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for e in energies {
        let _ = writeln!(out, "{e}");
    }
    out
}

/// Amplitudes (before integerization) and starting step of a state file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateInput {
    pub amps: Vec<Rational>,
    pub step: Unbounded,
}

pub fn parse_state(text: &str) -> Result<StateInput, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "amps:")) => {}
        _ => return Err(FormatError::MissingAmps),
    }
    let mut amps = Vec::new();
    let mut step = Unbounded::zero();
    let mut saw_step = false;
    for (n, line) in lines {
        let bad = || FormatError::Parse { line: n, text: line.to_string() };
        if saw_step {
            return Err(bad());
        }
        if let Some(rest) = line.strip_prefix("step:") {
            let value = parse_rational(rest).map_err(|_| bad())?;
            if !value.is_integer() {
                return Err(bad());
            }
            step = value.to_integer();
            saw_step = true;
        } else {
            amps.push(parse_rational(line).map_err(|_| bad())?);
        }
    }
    if amps.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(StateInput { amps, step })
}

pub fn write_state(amps: &[Rational], step: &Unbounded) -> String {
    let mut out = String::from("amps:\n");
    for a in amps {
        let _ = writeln!(out, "{a}");
    }
    let _ = writeln!(out, "step: {step}");
    out
}
