use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "dstab.report/1";

/// Integers above 2^53 in magnitude become decimal strings.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.unsigned_abs() <= 1 << 53 => json!(v),
        _ => json!(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub seed: Option<u64>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            seed: None,
            timing_ms: None,
        }
    }

    pub fn input(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(k.to_string(), v.into());
        self
    }

    pub fn output(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(k.to_string(), v.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("outputs".into(), Value::Object(self.outputs.clone()));
        if let Some(s) = self.seed {
            m.insert("seed".into(), json!(s));
        }
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t as u64));
        }
        Value::Object(m)
    }

    fn rows(&self) -> Vec<(String, String)> {
        self.outputs.iter().map(|(k, v)| (k.clone(), cell(v))).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("key,value\n");
                for (k, v) in self.rows() {
                    let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
                }
                s
            }
            Format::Table => {
                let rows = self.rows();
                let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in rows {
                    let _ = writeln!(s, "{k:<w$}  {v}");
                }
                s
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            a.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        Value::Array(a) => a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n  "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
