//! On-disk formats.
//!
//! * dataset CSV: header `x,y` or `x,y,role`, role in {train, val, test}
//!   (`augmented` rows leave `y` empty);
//! * predictions CSV: `x,y_true,y_pred,role`;
//! * trace JSON: `{"config": .., "termination": .., "iterations": [..]}`.
//!
//! Every float is written with 17 significant digits.

use std::io::{self, Read, Write};
use std::path::Path;

use fourierfit_core::{Dataset, FitConfig, FitResult, IterationRecord, Sample, SampleRole, Termination};
use serde::Serialize;

use crate::error::CliError;

/// `%.17g`-style formatting: 17 significant digits, trailing zeros trimmed,
/// exponent form outside `1e-5 <= |v| < 1e17`.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_g17(v: Option<f64>) -> String {
    v.map(format_g17).unwrap_or_default()
}

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), line, message: message.into() }
}

/// Parses a dataset CSV from any reader. `path` is used in messages only.
pub fn read_dataset_from<R: Read>(reader: R, path: &Path) -> Result<Dataset, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| parse_err(path, 1, e.to_string()))?
        .iter()
        .map(|h| h.trim_start_matches('\u{feff}').to_ascii_lowercase())
        .collect::<Vec<_>>();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(xi), Some(yi)) = (col("x"), col("y")) else {
        return Err(parse_err(path, 1, format!("expected header `x,y[,role]`, found `{}`", headers.join(","))));
    };
    let ri = col("role");

    let mut samples = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");

        let x: f64 = field(xi)
            .parse()
            .map_err(|_| parse_err(path, line, format!("invalid x value `{}`", field(xi))))?;
        let y = match field(yi) {
            "" => None,
            s => Some(s.parse::<f64>().map_err(|_| parse_err(path, line, format!("invalid y value `{s}`")))?),
        };
        let role = match ri.map(field) {
            None | Some("") => None,
            Some(s) => Some(s.parse::<SampleRole>().map_err(|e| parse_err(path, line, e))?),
        };
        if y.is_none() && role != Some(SampleRole::Augmented) {
            return Err(parse_err(path, line, "missing y value"));
        }
        samples.push(Sample { x, y, role });
    }
    if samples.is_empty() {
        return Err(parse_err(path, 1, "no data rows"));
    }
    Ok(Dataset::new(samples)?)
}

pub fn read_dataset(path: &Path) -> Result<Dataset, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    read_dataset_from(io::BufReader::new(file), path)
}

pub fn write_dataset_to<W: Write>(writer: W, dataset: &Dataset) -> csv::Result<()> {
    let with_roles = dataset.samples().iter().any(|s| s.role.is_some());
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    if with_roles {
        w.write_record(["x", "y", "role"])?;
    } else {
        w.write_record(["x", "y"])?;
    }
    for s in dataset.samples() {
        let (x, y) = (format_g17(s.x), opt_g17(s.y));
        if with_roles {
            w.write_record([x.as_str(), y.as_str(), s.role.map_or("", SampleRole::as_str)])?;
        } else {
            w.write_record([x, y])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_predictions_to<W: Write>(writer: W, result: &FitResult) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(["x", "y_true", "y_pred", "role"])?;
    for p in &result.predictions {
        w.write_record([
            format_g17(p.x).as_str(),
            opt_g17(p.y_true).as_str(),
            format_g17(p.y_pred).as_str(),
            p.role.as_str(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TraceRecord {
    n: usize,
    h_bins: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2_train: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2_val: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2_test: Option<f64>,
    sigma_window: Option<f64>,
}

impl From<&IterationRecord> for TraceRecord {
    fn from(r: &IterationRecord) -> Self {
        Self {
            n: r.n,
            h_bins: r.h_bins,
            r2_train: r.r2_train,
            r2_val: r.r2_val,
            r2_test: r.r2_test,
            sigma_window: r.sigma_window,
        }
    }
}

#[derive(Debug, Serialize)]
struct TraceFile<'a> {
    config: &'a FitConfig,
    termination: Termination,
    iterations: Vec<TraceRecord>,
}

/// Compact JSON formatter that writes floats via [`format_g17`]; non-finite
/// values become `null`.
struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_g17(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

pub fn write_trace_to<W: Write>(mut writer: W, result: &FitResult) -> io::Result<()> {
    let file = TraceFile {
        config: &result.config,
        termination: result.termination,
        iterations: result.trace.iter().map(TraceRecord::from).collect(),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut writer, G17Formatter);
    file.serialize(&mut ser).map_err(io::Error::other)?;
    writer.write_all(b"\n")?;
    writer.flush()
}
