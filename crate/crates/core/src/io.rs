//! Text formats: JSON configuration documents and CSV exports.
//!
//! Scalars are always JSON strings so that values stay exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{Histogram, PointConfiguration, Spectrum, SpectrumKind};
use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

/// On-disk layout of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub dim: usize,
    #[serde(default = "rational_field")]
    pub sqrt_base: u32,
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_weights: Option<Vec<String>>,
}

fn rational_field() -> u32 {
    1
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Format(format!("line {} column {}: {}", e.line(), e.column(), e))
}

impl ConfigDocument {
    pub fn from_config(p: &PointConfiguration) -> Self {
        ConfigDocument {
            dim: p.dim(),
            sqrt_base: p.field(),
            points: p.points().iter().map(|pt| pt.iter().map(QuadScalar::canonical).collect()).collect(),
            form_weights: p.form_weights().map(|w| w.iter().map(QuadScalar::canonical).collect()),
        }
    }

    pub fn to_config(&self) -> Result<PointConfiguration> {
        let scalar = |text: &str, what: String| {
            QuadScalar::parse(text, self.sqrt_base).map_err(|e| match e {
                Error::MixedField(..) | Error::InvalidField(_) => e,
                other => Error::Format(format!("{what}: {other}")),
            })
        };
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, pt)| {
                pt.iter()
                    .enumerate()
                    .map(|(k, c)| scalar(c, format!("point {} coordinate {}", i + 1, k + 1)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let config = PointConfiguration::new(self.dim, self.sqrt_base, points)?;
        match &self.form_weights {
            None => Ok(config),
            Some(w) => {
                let weights = w
                    .iter()
                    .enumerate()
                    .map(|(k, c)| scalar(c, format!("form weight {}", k + 1)))
                    .collect::<Result<Vec<_>>>()?;
                config.with_form_weights(weights)
            }
        }
    }
}

pub fn parse_config(text: &str) -> Result<PointConfiguration> {
    let doc: ConfigDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_config()
}

pub fn print_config(p: &PointConfiguration) -> String {
    serde_json::to_string_pretty(&ConfigDocument::from_config(p)).expect("document serializes")
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_config(path: &Path) -> Result<PointConfiguration> {
    parse_config(&read_text(path)?).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// `value,approx` header, then one canonical value and its double per line.
pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("value,approx\n");
    for v in s.values() {
        out.push_str(&format!("{},{}\n", v.canonical(), v.to_f64()));
    }
    out
}

/// Reads the first column of a spectrum CSV. Blank lines, `#` comments
/// and a `value` header are skipped. The field is inferred from the
/// values; rational entries are lifted into it.
pub fn parse_spectrum_csv(text: &str, kind: SpectrumKind) -> Result<Spectrum> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cell = line.split(',').next().unwrap_or("").trim();
        if cell.eq_ignore_ascii_case("value") {
            continue;
        }
        let v = QuadScalar::parse_infer(cell)
            .map_err(|e| Error::Format(format!("line {} column 1: {e}", lineno + 1)))?;
        raw.push((lineno + 1, v));
    }
    let mut field = 1;
    for (line, v) in &raw {
        if v.field() != 1 && !v.is_rational() {
            if field != 1 && field != v.field() {
                return Err(Error::Format(format!("line {line}: value in Q(sqrt({})) mixed with Q(sqrt({field}))", v.field())));
            }
            field = v.field();
        }
    }
    let values = raw
        .into_iter()
        .map(|(_, v)| if v.field() == field { Ok(v) } else { v.lift_rational(field) })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::new(kind, values))
}

/// `bin_lower,count` header, then one non-empty bin per line.
pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_lower,count\n");
    for (lower, count) in &h.counts {
        out.push_str(&format!("{lower},{count}\n"));
    }
    out
}
