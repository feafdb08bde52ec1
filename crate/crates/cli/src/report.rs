//! Report rendering: text tables, RFC-4180 CSV, versioned JSON.
//!
//! Every numeric cell carries the exact fraction (authoritative) and a
//! 6-place decimal approximation (presentation only). Verdict-style rows
//! have no numeric payload and use the note column instead.

use wshift::exactmath::{approx_str, exact_str, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub struct Row {
    pub label: String,
    pub exact: Option<Rat>,
    pub note: Option<String>,
}

pub struct Report {
    pub title: String,
    pub rows: Vec<Row>,
}

const JSON_SCHEMA: &str = "wshift-report/1";

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.to_string(), rows: Vec::new() }
    }

    pub fn value(&mut self, label: impl Into<String>, exact: Rat) {
        self.rows.push(Row { label: label.into(), exact: Some(exact), note: None });
    }

    pub fn value_with_note(&mut self, label: impl Into<String>, exact: Rat, note: impl Into<String>) {
        self.rows.push(Row { label: label.into(), exact: Some(exact), note: Some(note.into()) });
    }

    pub fn note(&mut self, label: impl Into<String>, note: impl Into<String>) {
        self.rows.push(Row { label: label.into(), exact: None, note: Some(note.into()) });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        let label_w = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
        let exact_w = self
            .rows
            .iter()
            .filter_map(|r| r.exact.as_ref().map(|e| exact_str(e).len()))
            .max()
            .unwrap_or(5)
            .max(5);
        for r in &self.rows {
            let exact = r.exact.as_ref().map(exact_str).unwrap_or_default();
            let approx = r.exact.as_ref().map(|e| approx_str(e, 6)).unwrap_or_default();
            let note = r.note.as_deref().unwrap_or("");
            out.push_str(&format!(
                "{:<label_w$}  {:>exact_w$}  {:>9}  {}\n",
                r.label, exact, approx, note
            ));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("label,exact,approx,note\r\n");
        for r in &self.rows {
            let exact = r.exact.as_ref().map(exact_str).unwrap_or_default();
            let approx = r.exact.as_ref().map(|e| approx_str(e, 6)).unwrap_or_default();
            let note = r.note.as_deref().unwrap_or("");
            out.push_str(&format!(
                "{},{},{},{}\r\n",
                csv_escape(&r.label),
                csv_escape(&exact),
                csv_escape(&approx),
                csv_escape(note)
            ));
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "label": r.label,
                    "exact": r.exact.as_ref().map(exact_str),
                    "approx": r.exact.as_ref().map(|e| approx_str(e, 6)),
                    "note": r.note,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "schema": JSON_SCHEMA,
            "title": self.title,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
