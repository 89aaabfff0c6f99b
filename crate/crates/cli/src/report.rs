//! Command reports and their text, JSON and CSV renderings.
//!
//! Every number is emitted as a decimal string; rationals become
//! `{"num": "...", "den": "..."}` objects.

use fwps_core::{BigRat, UfPartition, WeightSystem};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Matches,
    Exception,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Matches => "matches",
            Status::Exception => "documented-exception",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    pub status: Status,
    pub warnings: Vec<String>,
    /// Row-oriented data for CSV output (header, rows).
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Human-oriented preamble for text output.
    pub text_header: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            status: Status::Ok,
            warnings: Vec::new(),
            table: None,
            text_header: None,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.push((key.to_string(), value));
        self
    }

    pub fn result(&mut self, key: &str, value: Value) -> &mut Self {
        self.results.push((key.to_string(), value));
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        self.warnings.push(message.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let section = |entries: &[(String, Value)]| {
            Value::Object(entries.iter().cloned().collect::<Map<String, Value>>())
        };
        json!({
            "command": self.command,
            "inputs": section(&self.inputs),
            "results": section(&self.results),
            "status": self.status.as_str(),
            "warnings": self.warnings,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(header) = &self.text_header {
            out.push_str(header);
            if !header.ends_with('\n') {
                out.push('\n');
            }
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {}\n", text(v)));
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some((header, rows)) => {
                writer.write_record(header).expect("in-memory write");
                for row in rows {
                    writer.write_record(row).expect("in-memory write");
                }
            }
            None => {
                writer.write_record(["section", "key", "value"]).expect("in-memory write");
                for (k, v) in &self.inputs {
                    writer.write_record(["input", k, &text(v)]).expect("in-memory write");
                }
                for (k, v) in &self.results {
                    writer.write_record(["result", k, &text(v)]).expect("in-memory write");
                }
                writer
                    .write_record(["status", "status", self.status.as_str()])
                    .expect("in-memory write");
                for w in &self.warnings {
                    writer.write_record(["warning", "", w]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf8")
    }
}

/// Compact human rendering of a JSON value produced by this module.
pub fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => "-".into(),
        Value::Number(n) => n.to_string(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(text).collect();
            if items.iter().all(|x| x.is_string()) {
                format!("({})", inner.join(","))
            } else {
                format!("[{}]", inner.join(", "))
            }
        }
        Value::Object(map) => {
            if let (Some(n), Some(d)) = (map.get("num"), map.get("den")) {
                return format!("{}/{}", text(n), text(d));
            }
            if let (Some(i), Some(p)) = (map.get("iota"), map.get("parts")) {
                return format!("{} [ι={}]", text(p), text(i));
            }
            let inner: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", text(v))).collect();
            format!("{{{}}}", inner.join(", "))
        }
    }
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn count(x: usize) -> Value {
    Value::String(x.to_string())
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn rat(x: &BigRat) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn weights(q: &WeightSystem) -> Value {
    ints(q.weights())
}

pub fn partition(a: &UfPartition) -> Value {
    json!({ "iota": a.iota().to_string(), "parts": ints(a.parts()) })
}

pub fn partitions(list: &[UfPartition]) -> Value {
    Value::Array(list.iter().map(partition).collect())
}
