//! Artifact formatting: versioned JSON envelopes, CSV tables and
//! all-or-nothing file writes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Number, Value};

pub const SCHEMA: &str = "scarf-spectra/1";

/// Significant digits kept for every float in JSON output.
pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every float in `v` to [`SIGNIFICANT_DIGITS`]; integers are kept.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            Number::from_f64(round_sig(x)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// `{"schema", "inputs", "results"}` rendered as pretty JSON with a trailing newline.
pub fn envelope<I: Serialize, R: Serialize>(inputs: &I, results: &R) -> serde_json::Result<String> {
    let doc = json!({
        "schema": SCHEMA,
        "inputs": serde_json::to_value(inputs)?,
        "results": serde_json::to_value(results)?,
    });
    let mut text = serde_json::to_string_pretty(&round_floats(doc))?;
    text.push('\n');
    Ok(text)
}

/// CSV text from a header and rows of already formatted fields.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> csv::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
}

/// Float field for CSV at the JSON precision.
pub fn field(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else if r.is_finite() {
        format!("{r}")
    } else {
        "NaN".to_string()
    }
}

/// Writes `text` to `path` through a sibling temporary file and a rename, so
/// a failed run never leaves a truncated artifact. Standard output otherwise.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            let file_name = path
                .file_name()
                .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
            let mut tmp_name = file_name.to_os_string();
            tmp_name.push(".partial");
            let tmp = path.with_file_name(tmp_name);
            let result = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path));
            if result.is_err() {
                let _ = fs::remove_file(&tmp);
            }
            result
        }
    }
}
