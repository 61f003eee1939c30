use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use super::sweep::SweepRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "function", "n", "m", "gamma", "epsilon", "eta", "error_inf", "error_l2", "cond_2", "cond_inf",
    "flag",
];

/// A sweep table with its `# key: value` metadata lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvDocument {
    pub metadata: Vec<(String, String)>,
    pub records: Vec<SweepRecord>,
}

impl CsvDocument {
    pub fn new(records: Vec<SweepRecord>) -> Self {
        Self {
            metadata: Vec::new(),
            records,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Row order: function, gamma, epsilon, n, then eta.
pub fn record_order(a: &SweepRecord, b: &SweepRecord) -> Ordering {
    a.function
        .cmp(&b.function)
        .then(a.gamma.total_cmp(&b.gamma))
        .then(a.epsilon.total_cmp(&b.epsilon))
        .then(a.n.cmp(&b.n))
        .then(a.eta.total_cmp(&b.eta))
}

/// Renders metadata, header and the sorted records.
pub fn to_csv_string(doc: &CsvDocument) -> String {
    let mut out = String::new();
    for (k, v) in &doc.metadata {
        // keep each entry on its own comment line
        let v = v.replace(['\n', '\r'], " ");
        out.push_str(&format!("# {k}: {v}\n"));
    }
    let mut sorted: Vec<&SweepRecord> = doc.records.iter().collect();
    sorted.sort_by(|a, b| record_order(a, b));
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in sorted {
        w.write_record([
            r.function.clone(),
            r.n.to_string(),
            r.m.to_string(),
            format_float(r.gamma),
            format_float(r.epsilon),
            format_float(r.eta),
            format_float(r.error_inf),
            format_float(r.error_l2),
            format_float(r.cond_2),
            format_float(r.cond_inf),
            r.flag.to_string(),
        ])
        .expect("in-memory write");
    }
    let body = w.into_inner().expect("in-memory flush");
    out.push_str(std::str::from_utf8(&body).expect("utf-8 fields"));
    out
}

/// Writes a document, creating parent directories.
pub fn write_csv(doc: &CsvDocument, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    fs::write(path, to_csv_string(doc)).map_err(io)
}

/// Writes records without metadata.
pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    write_csv(&CsvDocument::new(records.to_vec()), path)
}

/// Parses the dialect produced by [`to_csv_string`]; `path` only labels
/// errors.
pub fn parse_csv(text: &str, path: &Path) -> Result<CsvDocument> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut metadata = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        let rest = rest.trim();
        let (k, v) = rest
            .split_once(':')
            .ok_or_else(|| err(i + 1, format!("metadata line without `key: value`: `{line}`")))?;
        metadata.push((k.trim().to_string(), v.trim().to_string()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| err(metadata.len() + 1, e.to_string()))?
        .clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(err(
            metadata.len() + 1,
            format!("expected header `{}`", CSV_HEADER.join(",")),
        ));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            err(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| row.get(i).unwrap_or("");
        let float = |i: usize| {
            field(i)
                .parse::<f64>()
                .map_err(|_| err(line, format!("column `{}`: not a number: `{}`", CSV_HEADER[i], field(i))))
        };
        let int = |i: usize| {
            field(i)
                .parse::<usize>()
                .map_err(|_| err(line, format!("column `{}`: not an integer: `{}`", CSV_HEADER[i], field(i))))
        };
        records.push(SweepRecord {
            function: field(0).to_string(),
            n: int(1)?,
            m: int(2)?,
            gamma: float(3)?,
            epsilon: float(4)?,
            eta: float(5)?,
            error_inf: float(6)?,
            error_l2: float(7)?,
            cond_2: float(8)?,
            cond_inf: float(9)?,
            flag: field(10).parse().map_err(|m| err(line, m))?,
        });
    }
    Ok(CsvDocument { metadata, records })
}

pub fn read_csv(path: &Path) -> Result<CsvDocument> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text, path)
}
