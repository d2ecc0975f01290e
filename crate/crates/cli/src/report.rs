//! Reports are built once as JSON values; text mode flattens them into
//! `key=value` lines.

use std::fmt::Write as _;

use serde_json::Value;

pub fn render(report: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    flatten(&mut out, "", report);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                let name = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten(out, &name, value);
            }
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let joined: Vec<String> = items.iter().filter_map(scalar).collect();
            let _ = writeln!(out, "{prefix}={}", joined.join(" "));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), item);
            }
        }
        other => {
            let _ = writeln!(out, "{prefix}={}", scalar(other).expect("scalar"));
        }
    }
}
