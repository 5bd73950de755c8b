//! Output formats. All three are views of the same `serde_json::Value`.

use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Format};

/// `serde_json::Map` is ordered by key, so this output is canonical.
pub fn to_value<T: Serialize>(report: &T) -> Result<Value, CliError> {
    serde_json::to_value(report).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn render<T: Serialize>(report: &T, format: Format) -> Result<String, CliError> {
    let value = to_value(report)?;
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(&value, 0, &mut out);
            out
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            let mut out = String::from("key,value\n");
            for (k, v) in rows {
                out.push_str(&csv_field(&k));
                out.push(',');
                out.push_str(&csv_field(&v));
                out.push('\n');
            }
            out
        }
    })
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

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

// scalars, and arrays of scalars (one level of nesting) fit on one line
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let Value::Array(items) = v else { return None };
    let parts: Option<Vec<String>> = items
        .iter()
        .map(|x| {
            scalar(x).or_else(|| match x {
                Value::Array(inner) => inner
                    .iter()
                    .map(scalar)
                    .collect::<Option<Vec<_>>>()
                    .map(|p| format!("({})", p.join(" "))),
                _ => None,
            })
        })
        .collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&key(k), x, rows)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, rows)),
        other => rows.push((prefix.to_string(), scalar(other).unwrap_or_default())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
