//! Indented plain-text view of a JSON payload.

use std::fmt::Write;

use serde_json::Value;

pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
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

/// A flat array of scalars on one line, e.g. `18/1 -3/1 -3/1 3/1`.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(xs) => xs.iter().map(scalar).collect::<Option<Vec<_>>>().map(|s| format!("[{}]", s.join(" "))),
        _ => scalar(v),
    }
}

fn block(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (key, val) in map {
                match inline(val) {
                    Some(s) => writeln!(out, "{pad}{key:width$}  {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}").unwrap();
                        block(out, val, depth + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match inline(x) {
                    Some(s) => writeln!(out, "{pad}{s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}#{i}").unwrap();
                        block(out, x, depth + 1);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v).unwrap_or_default()).unwrap(),
    }
}
