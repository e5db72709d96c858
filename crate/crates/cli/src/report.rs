//! Versioned tabular reports.
//!
//! CSV layout: metadata lines `# key=value` (`schema`, `command`,
//! `config.<key>`, `flag.<key>`), then a header row and the data rows.
//! Backslashes and line breaks inside metadata values are escaped as `\\`
//! and `\n`. JSON carries the same fields as one object. Both forms parse
//! back to the identical [`Report`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliError;

pub const SCHEMA: &str = "rcurves-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub flags: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n").replace('\r', "\\r")
}

fn unescape(s: &str) -> Result<String, CliError> {
    let mut out = String::with_capacity(s.len());
    let mut it = s.chars();
    while let Some(c) = it.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match it.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => return Err(CliError::config(format!("bad escape \\{other:?} in report metadata"))),
        }
    }
    Ok(out)
}

impl Report {
    pub fn new(command: &str, config: BTreeMap<String, String>, columns: &[&str]) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            config,
            flags: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn flag(&mut self, key: &str, value: impl ToString) {
        self.flags.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Value of `column` in row `i`.
    pub fn cell(&self, i: usize, column: &str) -> Option<&str> {
        let j = self.columns.iter().position(|c| c == column)?;
        self.rows.get(i).map(|r| r[j].as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema={}\n", escape(&self.schema)));
        out.push_str(&format!("# command={}\n", escape(&self.command)));
        for (k, v) in &self.config {
            out.push_str(&format!("# config.{k}={}\n", escape(v)));
        }
        for (k, v) in &self.flags {
            out.push_str(&format!("# flag.{k}={}\n", escape(v)));
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Report, CliError> {
        let mut schema = None;
        let mut command = None;
        let mut config = BTreeMap::new();
        let mut flags = BTreeMap::new();
        let mut rest = text;
        while let Some(line) = rest.strip_prefix("# ") {
            let (line, tail) = line.split_once('\n').unwrap_or((line, ""));
            rest = tail;
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("bad metadata line {line:?}")))?;
            let v = unescape(v)?;
            if k == "schema" {
                schema = Some(v);
            } else if k == "command" {
                command = Some(v);
            } else if let Some(k) = k.strip_prefix("config.") {
                config.insert(k.to_string(), v);
            } else if let Some(k) = k.strip_prefix("flag.") {
                flags.insert(k.to_string(), v);
            } else {
                return Err(CliError::config(format!("unknown metadata key {k:?}")));
            }
        }
        let schema = schema.ok_or_else(|| CliError::config("missing schema line"))?;
        if schema != SCHEMA {
            return Err(CliError::config(format!("unsupported schema {schema:?}")));
        }
        let command = command.ok_or_else(|| CliError::config("missing command line"))?;
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(rest.as_bytes());
        let columns: Vec<String> = rd
            .headers()
            .map_err(|e| CliError::config(format!("csv header: {e}")))?
            .iter()
            .map(String::from)
            .collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err(CliError::config("missing csv header"));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| CliError::config(format!("csv row: {e}")))?;
            rows.push(rec.iter().map(String::from).collect());
        }
        Ok(Report { schema, command, config, flags, columns, rows })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("string maps serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, CliError> {
        let r: Report = serde_json::from_str(text).map_err(|e| CliError::config(format!("json: {e}")))?;
        if r.schema != SCHEMA {
            return Err(CliError::config(format!("unsupported schema {:?}", r.schema)));
        }
        if r.rows.iter().any(|row| row.len() != r.columns.len()) {
            return Err(CliError::config("row width differs from the header"));
        }
        Ok(r)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Report, CliError> {
        match format {
            Format::Csv => Report::from_csv(text),
            Format::Json => Report::from_json(text),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut cfg = BTreeMap::new();
        cfg.insert("q".to_string(), "2".to_string());
        cfg.insert("model_text".to_string(), "odd\\value\nwith break".to_string());
        let mut r = Report::new("count", cfg, &["class", "exact", "note"]);
        r.flag("c3", false);
        r.push(vec!["3; 2 2 -1 -1 -1".into(), "0".into(), "has, comma and \"quote\"".into()]);
        r.push(vec!["".into(), "1/2".into(), "".into()]);
        r
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new("scan", BTreeMap::new(), &["a", "b"]);
        let csv = r.to_csv();
        assert!(csv.ends_with("a,b\n"));
        assert_eq!(Report::from_csv(&csv).unwrap(), r);
    }

    #[test]
    fn round_trips() {
        let r = sample();
        assert_eq!(Report::from_csv(&r.to_csv()).unwrap(), r);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(!r.to_csv().contains('\r'));
    }

    #[test]
    fn rejects_foreign_schema() {
        let mut r = sample();
        r.schema = "other/1".into();
        assert!(Report::from_csv(&r.to_csv()).is_err());
        assert!(Report::from_json(&r.to_json()).is_err());
    }
}
