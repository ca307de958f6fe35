//! Tabular reports rendered as Markdown, CSV, or JSON.
//!
//! Every cell is a string: integers in plain decimal, fractions as `p/q` in
//! lowest terms, and decimal approximations only in columns ending `_approx`.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    /// Scalar results shown above the table (status, counts, limits).
    pub summary: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Omitted in deterministic mode.
    pub generated_at: Option<String>,
}

impl ReportDocument {
    pub fn new(command: &str, columns: &[&str]) -> ReportDocument {
        ReportDocument {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..ReportDocument::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn summary(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width for {}", self.command);
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_markdown(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let pairs = |kv: &[(String, String)]| -> Map<String, Value> {
            kv.iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect()
        };
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("parameters".into(), Value::Object(pairs(&self.parameters)));
        root.insert("summary".into(), Value::Object(pairs(&self.summary)));
        if let Some(ts) = &self.generated_at {
            root.insert("generated_at".into(), Value::String(ts.clone()));
        }
        root.insert(
            "columns".into(),
            Value::Array(self.columns.iter().cloned().map(Value::String).collect()),
        );
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                        .collect(),
                )
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## {}", self.command);
        out.push('\n');
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "- {k}: {v}");
        }
        if let Some(ts) = &self.generated_at {
            let _ = writeln!(out, "- generated_at: {ts}");
        }
        if !self.summary.is_empty() {
            out.push('\n');
            for (k, v) in &self.summary {
                let _ = writeln!(out, "- **{k}**: {v}");
            }
        }
        out.push('\n');
        let esc = |s: &str| s.replace('|', "\\|");
        let _ = writeln!(out, "| {} |", self.columns.join(" | "));
        let _ = writeln!(
            out,
            "|{}|",
            self.columns.iter().map(|_| "---").collect::<Vec<_>>().join("|")
        );
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| esc(c)).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }
}
