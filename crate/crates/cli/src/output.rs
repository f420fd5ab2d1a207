use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::config::Format;

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Rounds every floating-point number in `v`; non-finite values become null.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Envelope {
    pub fn new(command: &str, config: &impl Serialize, result: &impl Serialize, warnings: Vec<String>) -> Self {
        Self {
            command: command.into(),
            config: round_value(serde_json::to_value(config).expect("config serialises")),
            result: round_value(serde_json::to_value(result).expect("result serialises")),
            warnings,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("envelope serialises");
                s.push('\n');
                s
            }
            Format::Csv => to_csv(self),
        }
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.iter().all(Value::is_object))
}

pub type Metadata = Vec<(String, Value)>;
pub type Rows = Vec<Map<String, Value>>;

/// Splits a result into `# key = value` metadata and its row table (the first
/// array of objects).
pub fn split_result(result: &Value) -> (Metadata, Rows) {
    let mut meta = Vec::new();
    let mut rows = Vec::new();
    let take = |a: &Vec<Value>| {
        a.iter()
            .map(|r| {
                let mut flat = Vec::new();
                flatten("", r, &mut flat);
                flat.into_iter().collect::<Map<_, _>>()
            })
            .collect::<Vec<_>>()
    };
    match result {
        Value::Array(a) if is_table(result) => rows = take(a),
        Value::Object(o) => {
            let mut found = false;
            for (k, v) in o {
                match v {
                    Value::Array(a) if !found && is_table(v) => {
                        rows = take(a);
                        found = true;
                    }
                    _ => flatten(k, v, &mut meta),
                }
            }
        }
        other => meta.push(("value".into(), other.clone())),
    }
    (meta, rows)
}

fn to_csv(env: &Envelope) -> String {
    let (meta, rows) = split_result(&env.result);
    let mut s = format!("# command = {}\n", env.command);
    for (k, v) in &meta {
        s.push_str(&format!("# {k} = {}\n", cell(v)));
    }
    for w in &env.warnings {
        s.push_str(&format!("# warning: {w}\n"));
    }
    let mut wtr = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        wtr.write_record(first.keys()).expect("in-memory csv");
        for r in &rows {
            wtr.write_record(r.values().map(cell)).expect("in-memory csv");
        }
    }
    s.push_str(&String::from_utf8(wtr.into_inner().expect("in-memory csv")).expect("utf-8 csv"));
    s
}

/// Writes `contents` to `path` via a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
