use std::fmt::Write as _;

use crate::args::Format;

/// Ordered key/value report. `kv` output is one `key=value` per line with
/// stable keys; `text` output is for people and may change.
#[derive(Debug, Default)]
pub struct Report {
    title: String,
    rows: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    /// Free-form line shown only in text output.
    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Kv => {
                for (k, v) in &self.rows {
                    writeln!(s, "{k}={v}").unwrap();
                }
            }
            Format::Text => {
                writeln!(s, "{}", self.title).unwrap();
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    writeln!(s, "  {k:<width$}  {v}").unwrap();
                }
                for n in &self.notes {
                    writeln!(s, "{n}").unwrap();
                }
            }
        }
        s
    }
}
