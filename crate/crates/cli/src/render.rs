//! Plain-text rendering of JSON reports.

use std::io::IsTerminal;

use serde_json::Value;

/// `HCFAM_COLOR=never` disables color; otherwise color follows whether
/// stdout is a terminal.
pub fn color_enabled() -> bool {
    match std::env::var("HCFAM_COLOR") {
        Ok(v) if v == "never" => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn key(name: &str, color: bool) -> String {
    if color {
        format!("\x1b[1m{name}\x1b[0m")
    } else {
        name.to_string()
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn write(out: &mut String, v: &Value, indent: usize, color: bool) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{}: {s}\n", key(k, color))),
                    None => {
                        out.push_str(&format!("{pad}{}:\n", key(k, color)));
                        write(out, item, indent + 1, color);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write(out, item, indent + 1, color);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn text(v: &Value, color: bool) -> String {
    let mut out = String::new();
    write(&mut out, v, 0, color);
    out
}
