//! Dataset and table files.
//!
//! Dataset rows are `label,f1,f2,...` with the label `-1` or `+1`. A single
//! header row is allowed and detected by a non-numeric first cell. Comma
//! separated, `.` decimal point, LF or CRLF line endings.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::eval::SweepPoint;
use crate::types::{Dataset, FeatureVector, Label, LabeledExample};

pub const SWEEP_HEADER: [&str; 6] = [
    "c",
    "auc_roc",
    "abstention_fraction",
    "accuracy_on_accepted",
    "n_misclassified",
    "n_abstained",
];

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads raw rows, skipping an auto-detected header. Returns `(line, cells)`
/// pairs with 1-based line numbers.
fn read_rows<R: Read>(reader: R) -> Result<Vec<(usize, Vec<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("row {}: {}", i + 1, e)))?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(i + 1);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        rows.push((line, rec.iter().map(str::to_owned).collect::<Vec<_>>()));
    }
    if let Some((_, first)) = rows.first() {
        if first.first().is_some_and(|c| c.parse::<f64>().is_err()) {
            rows.remove(0);
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse("no data rows".into()));
    }
    Ok(rows)
}

fn parse_cell(line: usize, col: usize, cell: &str) -> Result<f64> {
    let v: f64 = cell
        .parse()
        .map_err(|_| Error::Parse(format!("row {line}, column {col}: '{cell}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!(
            "row {line}, column {col}: '{cell}' is not finite"
        )));
    }
    Ok(v)
}

fn parse_label(line: usize, cell: &str) -> Result<Label> {
    match cell.parse::<f64>() {
        Ok(1.0) => Ok(Label::Positive),
        Ok(-1.0) => Ok(Label::Negative),
        _ => Err(Error::Parse(format!(
            "row {line}: label must be -1 or +1, got '{cell}'"
        ))),
    }
}

fn parse_features(line: usize, first_col: usize, cells: &[String]) -> Result<FeatureVector> {
    let values = cells
        .iter()
        .enumerate()
        .map(|(j, c)| parse_cell(line, first_col + j, c))
        .collect::<Result<Vec<_>>>()?;
    FeatureVector::new(values).map_err(|e| Error::Parse(format!("row {line}: {e}")))
}

fn check_width(line: usize, width: usize, expected: &mut Option<usize>) -> Result<()> {
    match *expected {
        None => {
            *expected = Some(width);
            Ok(())
        }
        Some(w) if w == width => Ok(()),
        Some(w) => Err(Error::Parse(format!("row {line}: expected {w} columns, found {width}"))),
    }
}

pub fn parse_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let mut width = None;
    let mut examples = Vec::new();
    for (line, cells) in read_rows(reader)? {
        check_width(line, cells.len(), &mut width)?;
        if cells.len() < 2 {
            return Err(Error::Parse(format!(
                "row {line}: need a label and at least one feature"
            )));
        }
        let y = parse_label(line, &cells[0])?;
        let x = parse_features(line, 2, &cells[1..])?;
        examples.push(LabeledExample::new(x, y));
    }
    Dataset::new(examples)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    parse_dataset(open(path)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Reads a feature-only file (no label column).
pub fn load_features_csv(path: impl AsRef<Path>) -> Result<Vec<FeatureVector>> {
    let path = path.as_ref();
    let mut width = None;
    let mut out = Vec::new();
    for (line, cells) in read_rows(open(path)?)? {
        check_width(line, cells.len(), &mut width)?;
        out.push(parse_features(line, 1, &cells)?);
    }
    Ok(out)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

/// Formats a float so that parsing the text recovers the same bits.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|| "NaN".into())
}

pub fn write_dataset<W: Write>(data: &Dataset, mut out: W) -> std::io::Result<()> {
    for e in data {
        let mut row = e.y.to_string();
        for v in e.x.iter() {
            row.push(',');
            row.push_str(&fmt_f64(*v));
        }
        row.push('\n');
        out.write_all(row.as_bytes())?;
    }
    out.flush()
}

pub fn save_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::io::BufWriter::new(create(path)?);
    write_dataset(data, file).map_err(|e| Error::io(path, e))
}

/// Writes the plot-ready sweep table. Undefined metrics are written as `NaN`.
pub fn write_sweep_table<W: Write>(points: &[SweepPoint], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", SWEEP_HEADER.join(","))?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(p.c),
            fmt_opt(p.auc_roc),
            fmt_f64(p.abstention_fraction),
            fmt_opt(p.accuracy_on_accepted),
            p.n_misclassified,
            p.n_abstained
        )?;
    }
    out.flush()
}

pub fn save_sweep_table(points: &[SweepPoint], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_sweep_table(points, std::io::BufWriter::new(create(path)?)).map_err(|e| Error::io(path, e))
}

pub fn load_sweep_table(path: impl AsRef<Path>) -> Result<Vec<SweepPoint>> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if header.iter().ne(SWEEP_HEADER.iter().copied()) {
        return Err(Error::Parse(format!(
            "sweep table header mismatch: expected '{}'",
            SWEEP_HEADER.join(",")
        )));
    }
    let opt = |s: &str| s.parse::<f64>().ok().filter(|v| !v.is_nan());
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("row {}: {e}", i + 2)))?;
        let num = |j: usize| -> Result<f64> {
            rec[j]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}, column {}: '{}'", i + 2, SWEEP_HEADER[j], &rec[j])))
        };
        let count = |j: usize| -> Result<usize> {
            rec[j]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}, column {}: '{}'", i + 2, SWEEP_HEADER[j], &rec[j])))
        };
        points.push(SweepPoint {
            c: num(0)?,
            auc_roc: opt(&rec[1]),
            abstention_fraction: num(2)?,
            accuracy_on_accepted: opt(&rec[3]),
            n_misclassified: count(4)?,
            n_abstained: count(5)?,
        });
    }
    Ok(points)
}
