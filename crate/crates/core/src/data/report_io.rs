use std::path::Path;

use crate::error::{Error, Result};
use crate::types::EvalReport;

/// Pretty JSON mirroring the `EvalReport` fields one-to-one. Undefined
/// metrics are `null`.
pub fn report_to_string(report: &EvalReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn save_report(report: &EvalReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, report_to_string(report)?).map_err(|e| Error::io(path, e))
}

pub fn load_report(path: impl AsRef<Path>) -> Result<EvalReport> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
