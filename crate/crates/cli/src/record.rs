use std::io::{self, Write};

use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_owned())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

/// One output row. Keys keep insertion order so serialization is stable.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: Vec<(&'static str, Value)>,
    pub outputs: Vec<(&'static str, Value)>,
    pub status: Status,
}

impl OutputRecord {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            outputs: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn input(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.inputs.push((key, value.into()));
        self
    }

    pub fn output(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.outputs.push((key, value.into()));
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Ok } else { Status::Failed };
        self
    }

    pub fn error(mut self, err: impl std::fmt::Display) -> Self {
        self.status = Status::Error;
        self.outputs.push(("error", Value::Text(err.to_string())));
        self
    }

    fn fields(&self) -> impl Iterator<Item = &(&'static str, Value)> {
        self.inputs.iter().chain(self.outputs.iter())
    }

    pub fn to_json(&self) -> String {
        let section = |kv: &[(&'static str, Value)]| {
            let mut map = Map::new();
            for (k, v) in kv {
                map.insert((*k).to_owned(), json_value(v));
            }
            Json::Object(map)
        };
        let mut map = Map::new();
        map.insert("command".into(), Json::String(self.command.into()));
        map.insert("inputs".into(), section(&self.inputs));
        map.insert("outputs".into(), section(&self.outputs));
        map.insert("status".into(), Json::String(self.status.as_str().into()));
        Json::Object(map).to_string()
    }
}

fn json_value(v: &Value) -> Json {
    match v {
        Value::Float(x) => Number::from_f64(*x).map_or(Json::Null, Json::Number),
        Value::Int(x) => Json::Number((*x).into()),
        Value::Bool(b) => Json::Bool(*b),
        Value::Text(s) => Json::String(s.clone()),
    }
}

/// `printf("%.17g")`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{x:.prec$}", prec = (16 - exp) as usize);
        strip_zeros(&fixed).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Float(x) => format_g17(*x),
        Value::Int(x) => x.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::Text(s) => s.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes `records` in `format`. CSV columns are the union of all keys in first-seen order.
pub fn write_records(
    out: &mut impl Write,
    records: &[OutputRecord],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Json => {
            for rec in records {
                writeln!(out, "{}", rec.to_json())?;
            }
        }
        Format::Csv => {
            let mut columns: Vec<&str> = Vec::new();
            for rec in records {
                for (k, _) in rec.fields() {
                    if !columns.contains(k) {
                        columns.push(k);
                    }
                }
            }
            let header: Vec<&str> = std::iter::once("command")
                .chain(columns.iter().copied())
                .chain(std::iter::once("status"))
                .collect();
            writeln!(out, "{}", header.join(","))?;
            for rec in records {
                let mut row = vec![rec.command.to_owned()];
                for col in &columns {
                    row.push(
                        rec.fields()
                            .find(|(k, _)| k == col)
                            .map(|(_, v)| csv_cell(v))
                            .unwrap_or_default(),
                    );
                }
                row.push(rec.status.as_str().to_owned());
                writeln!(out, "{}", row.join(","))?;
            }
        }
    }
    Ok(())
}
