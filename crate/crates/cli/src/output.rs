//! Rendering of command results as aligned tables or `key=value` lines.

use std::fmt::{Display, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

type Record = Vec<(String, String)>;

/// Result of a command: one or more records with the same keys, plus an
/// optional one-line summary that replaces the table in human output.
#[derive(Debug, Default)]
pub struct Report {
    headline: Option<String>,
    records: Vec<Record>,
    pub failed: bool,
}

impl Report {
    pub fn value(key: &str, value: impl Display) -> Self {
        Report::default().with_record(vec![(key, value.to_string())])
    }

    pub fn record<K: Into<String>>(fields: Vec<(K, String)>) -> Self {
        Report::default().with_record(fields)
    }

    pub fn with_record<K: Into<String>>(mut self, fields: Vec<(K, String)>) -> Self {
        self.records.push(fields.into_iter().map(|(k, v)| (k.into(), v)).collect());
        self
    }

    pub fn with_headline(mut self, headline: impl Display) -> Self {
        self.headline = Some(headline.to_string());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => self.machine(),
            Format::Table => self.table(),
        }
    }

    fn machine(&self) -> String {
        let mut out = String::new();
        for record in &self.records {
            let line: Vec<_> = record.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    fn table(&self) -> String {
        if let Some(h) = &self.headline {
            return format!("{h}\n");
        }
        match self.records.as_slice() {
            [] => String::new(),
            [single] if single.len() == 1 => format!("{}\n", single[0].1),
            [single] => {
                let width = single.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                single.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
            }
            many => {
                let keys: Vec<&str> = many[0].iter().map(|(k, _)| k.as_str()).collect();
                let widths: Vec<usize> = (0..keys.len())
                    .map(|i| many.iter().map(|r| r[i].1.len()).chain([keys[i].len()]).max().unwrap_or(0))
                    .collect();
                let mut out = String::new();
                let row = |cells: Vec<&str>| {
                    let padded: Vec<_> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", row(keys.clone())).unwrap();
                for r in many {
                    writeln!(out, "{}", row(r.iter().map(|(_, v)| v.as_str()).collect())).unwrap();
                }
                out
            }
        }
    }
}
