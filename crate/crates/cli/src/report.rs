//! CSV, JSON and plain-table rendering.
//!
//! Every JSON document carries `"schema": "wordperm.report/1"` and a
//! `command` field; the layouts are described in `docs/report-schema.md`.

use serde::Serialize;
use wordperm_core::lab::{SuiteRow, Verdict};

pub const SCHEMA: &str = "wordperm.report/1";

pub const CSV_COLUMNS: [&str; 10] = [
    "word",
    "n",
    "tau",
    "tau_even",
    "tau_odd",
    "rho",
    "formula",
    "match",
    "converged",
    "horizon",
];

#[derive(Serialize)]
struct CsvRow<'a> {
    word: &'a str,
    n: usize,
    tau: Option<usize>,
    tau_even: Option<usize>,
    tau_odd: Option<usize>,
    rho: Option<usize>,
    formula: Option<usize>,
    #[serde(rename = "match")]
    verdict: &'static str,
    converged: bool,
    horizon: usize,
}

/// Rows as CSV with the fixed column set. Rows that assert nothing leave
/// `match` empty.
pub fn csv(word: &str, horizon: usize, rows: &[SuiteRow]) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.serialize(CsvRow {
            word,
            n: r.n,
            tau: r.tau,
            tau_even: r.tau_even,
            tau_odd: r.tau_odd,
            rho: r.rho,
            formula: r.formula,
            verdict: match r.verdict {
                Verdict::Info => "",
                v => v.as_str(),
            },
            converged: r.converged,
            horizon,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
pub struct JsonRow {
    pub n: usize,
    pub tau: Option<usize>,
    pub tau_even: Option<usize>,
    pub tau_odd: Option<usize>,
    pub rho: Option<usize>,
    pub formula: Option<usize>,
    pub verdict: &'static str,
    pub converged: bool,
    pub detail: String,
    pub counterexamples: Vec<String>,
}

impl From<&SuiteRow> for JsonRow {
    fn from(r: &SuiteRow) -> Self {
        Self {
            n: r.n,
            tau: r.tau,
            tau_even: r.tau_even,
            tau_odd: r.tau_odd,
            rho: r.rho,
            formula: r.formula,
            verdict: r.verdict.as_str(),
            converged: r.converged,
            detail: r.detail.clone(),
            counterexamples: r.counterexamples.clone(),
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with the schema header, newline terminated.
pub fn json<T: Serialize>(command: &str, body: &T) -> String {
    let doc = Document {
        schema: SCHEMA,
        command,
        body,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report bodies serialize");
    s.push('\n');
    s
}

/// Right-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}
