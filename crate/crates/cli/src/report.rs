use std::fmt::Write as _;

use serde_json::{Map, Value};

/// One command's output. Rendered canonically: sorted keys, floats as `{:.16e}`,
/// non-finite floats as `null`.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub residuals: Value,
    pub verdict: String,
    pub runtime_ms: Option<f64>,
    pub version: String,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("params".into(), self.params.clone());
        top.insert("results".into(), self.results.clone());
        top.insert("residuals".into(), self.residuals.clone());
        top.insert("verdict".into(), Value::String(self.verdict.clone()));
        top.insert(
            "runtime_ms".into(),
            self.runtime_ms.map_or(Value::Null, |t| float_value(t)),
        );
        top.insert("version".into(), Value::String(self.version.clone()));
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        let mut s = canonical_json(&self.to_value());
        s.push('\n');
        s
    }
}

pub fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Compact JSON with object keys in byte order and every float in 17 significant digits.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v);
    out
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(out, &map[k]);
            }
            out.push('}');
        }
    }
}

pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    // -0.0 and 0.0 print the same.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Scalars in a CSV cell: floats canonical, null empty, anything else compact JSON.
pub fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) => canonical_json(v),
        other => canonical_json(other),
    }
}

/// Rows of objects as CSV with the given column order.
pub fn to_csv(columns: &[&str], rows: &[Value]) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(columns)?;
    for row in rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|c| csv_cell(row.get(*c).unwrap_or(&Value::Null)))
            .collect();
        w.write_record(&cells)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
