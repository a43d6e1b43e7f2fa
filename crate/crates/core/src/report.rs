//! Structured pass/fail reports with witnesses, rendered as JSON or text.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// A check whose witness is only computed on failure.
    pub fn new(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, model: Option<&str>, checks: Vec<Check>, data: impl Serialize) -> Self {
        Report {
            command: command.to_string(),
            model: model.map(str::to_string),
            passed: checks.iter().all(|c| c.passed),
            checks,
            data: serde_json::to_value(data).expect("report data serializes"),
        }
    }

    /// A report for a structure that failed a precondition of the command.
    pub fn from_error(command: &str, model: Option<&str>, err: &Error) -> Self {
        Report::new(command, model, vec![Check::fail("preconditions", err.to_string())], Value::Null)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let title = match &self.model {
            Some(m) => format!("{} {m}", self.command),
            None => self.command.clone(),
        };
        out.push_str(&format!("{title}: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        for c in &self.checks {
            match (&c.witness, c.passed) {
                (_, true) => out.push_str(&format!("  ok    {}\n", c.name)),
                (Some(w), false) => out.push_str(&format!("  FAIL  {}: {w}\n", c.name)),
                (None, false) => out.push_str(&format!("  FAIL  {}\n", c.name)),
            }
        }
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                render_entry(&mut out, 1, k, v);
            }
        }
        out
    }
}

fn render_entry(out: &mut String, depth: usize, key: &str, value: &Value) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) if form_text(value).is_none() => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_entry(out, depth + 1, k, v);
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", inline(value))),
    }
}

fn inline(value: &Value) -> String {
    if let Some(f) = form_text(value) {
        return f;
    }
    match value {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

/// Renders a serialized form (`{degree, terms}`) as `-w1^w2 + w3^w4`.
fn form_text(value: &Value) -> Option<String> {
    let map = value.as_object()?;
    if map.len() != 2 {
        return None;
    }
    let degree = map.get("degree")?.as_u64()?;
    let terms = map.get("terms")?.as_array()?;
    if terms.is_empty() {
        return Some("0".into());
    }
    let mut out = String::new();
    for (n, t) in terms.iter().enumerate() {
        let coeff = t.get("coeff")?.as_str()?;
        let idx: Vec<String> = t.get("indices")?.as_array()?.iter().map(|i| format!("w{i}")).collect();
        let basis = if degree == 0 { String::new() } else { idx.join("^") };
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, coeff),
        };
        let sep = match (n, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let body = match (mag, basis.is_empty()) {
            (m, true) => m.to_string(),
            ("1", false) => basis,
            (m, false) => format!("{m} {basis}"),
        };
        out.push_str(sep);
        out.push_str(&body);
    }
    Some(out)
}
