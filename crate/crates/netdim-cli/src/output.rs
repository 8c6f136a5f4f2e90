//! Rendering and file writing.
//!
//! CSV dialect: comma separator, `.` decimal point, one header row, LF line
//! endings. Fields are quoted only when they contain a separator, quote or
//! line break. Non-finite scores print as `inf` / `-inf` in CSV and as the
//! strings `"inf"` / `"-inf"` in JSON.

use std::borrow::Cow;
use std::fs;
use std::io::Write;
use std::path::Path;

use netdim::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutFormat {
    type Err = netdim::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => Err(netdim::Error::InvalidParameter(format!(
                "unknown output format: {other} (expected csv or json)"
            ))),
        }
    }
}

/// Quote a CSV field only when the dialect requires it.
pub fn csv_field(s: &str) -> Cow<'_, str> {
    if s.contains([',', '"', '\n', '\r']) {
        Cow::Owned(format!("\"{}\"", s.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(s)
    }
}

/// JSON value for a score; infinities become strings since JSON numbers
/// cannot carry them.
pub fn json_score(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else if v > 0.0 {
        serde_json::Value::String("inf".into())
    } else {
        serde_json::Value::String("-inf".into())
    }
}

pub fn render_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Write to the path via a temp file and rename, so a present output file is
/// always complete; with no path, print to stdout.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => {
            let tmp = path.with_extension("tmp~");
            {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(content.as_bytes())?;
                f.sync_all()?;
            }
            fs::rename(&tmp, path)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
