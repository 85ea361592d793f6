//! Plain tables with '#'-prefixed metadata, written as CSV or JSON.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Failed numeric cells are `None`: "nan" in CSV, `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
}

impl Cell {
    pub fn num(x: f64) -> Self {
        Cell::Num(x.is_finite().then_some(x))
    }

    pub fn from_result<E>(r: Result<f64, E>) -> Self {
        r.map(Cell::num).unwrap_or(Cell::Num(None))
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => *x,
            Cell::Text(_) => None,
        }
    }

    fn to_csv_field(&self) -> String {
        match self {
            Cell::Num(Some(x)) => format!("{x:?}"),
            Cell::Num(None) => "nan".to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn from_csv_field(s: &str) -> Self {
        if s == "nan" {
            return Cell::Num(None);
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Cell::Num(Some(x)),
            _ => Cell::Text(s.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column by name; failed cells come back as NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    /// Number of failed numeric cells.
    pub fn failed_cells(&self) -> usize {
        self.rows.iter().flatten().filter(|c| matches!(c, Cell::Num(None))).count()
    }

    /// Whether every numeric cell outside column 0 failed.
    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty()
            && self
                .rows
                .iter()
                .all(|r| r.iter().skip(1).all(|c| !matches!(c, Cell::Num(Some(_)))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn emit(format: Format, meta: &[String], table: &Table) -> Result<String> {
    match format {
        Format::Csv => emit_csv(meta, table),
        Format::Json => emit_json(meta, table),
    }
}

pub fn emit_csv(meta: &[String], table: &Table) -> Result<String> {
    let mut out = String::new();
    for line in meta {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::to_csv_field))?;
    }
    out.push_str(std::str::from_utf8(&w.into_inner()?)?);
    Ok(out)
}

/// Inverse of [`emit_csv`]: metadata lines (without the `# ` prefix) and the table.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Table)> {
    let mut meta = Vec::new();
    let mut body = String::new();
    for line in text.split_inclusive('\n') {
        match line.strip_prefix('#') {
            Some(m) if body.is_empty() => {
                let m = m.trim_end_matches('\n');
                meta.push(m.strip_prefix(' ').unwrap_or(m).to_string());
            }
            _ => body.push_str(line),
        }
    }
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
    let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut table = Table::new(columns);
    for (i, rec) in r.records().enumerate() {
        let rec = rec.with_context(|| format!("malformed CSV record {}", i + 1))?;
        if rec.len() != table.columns.len() {
            bail!("record {} has {} fields, header has {}", i + 1, rec.len(), table.columns.len());
        }
        table.rows.push(rec.iter().map(Cell::from_csv_field).collect());
    }
    Ok((meta, table))
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    meta: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

pub fn emit_json(meta: &[String], table: &Table) -> Result<String> {
    let doc = JsonDoc {
        meta: meta.to_vec(),
        columns: table.columns.clone(),
        rows: table.rows.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(text: &str) -> Result<(Vec<String>, Table)> {
    let doc: JsonDoc = serde_json::from_str(text)?;
    Ok((
        doc.meta,
        Table {
            columns: doc.columns,
            rows: doc.rows,
        },
    ))
}
