use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub version: String,
    /// Arguments as given.
    pub input: BTreeMap<String, String>,
    pub result: Value,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &str, input: BTreeMap<String, String>, result: Value, elapsed_ms: f64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            result,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (dynprim {})", self.command, self.version).unwrap();
        for (k, v) in &self.input {
            writeln!(out, "  {k} = {v}").unwrap();
        }
        render(&mut out, &self.result, 0);
        writeln!(out, "elapsed: {:.3} ms", self.elapsed_ms).unwrap();
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render(out, x, indent + 2);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v).unwrap()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trip() {
        let mut input = BTreeMap::new();
        input.insert("phi".to_string(), "x^2 + t".to_string());
        let r = Report::new(
            "riccati",
            input,
            json!({"delta": "6*t - 2*t^2", "levels": [{"n": 2, "ok": true}], "z": [2, 3]}),
            1.25,
        );
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let text = r.to_text();
        assert!(text.contains("delta: 6*t - 2*t^2"));
        assert!(text.contains("z: [2, 3]"));
        assert!(text.contains("    ok: yes"));
    }
}
