//! The result tree shared by all commands, rendered as indented text or
//! pretty JSON. Rendering depends only on the tree, so equal inputs give
//! byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn new(name: &str, passed: bool, witness: Option<String>) -> Self {
        Verdict {
            name: name.to_string(),
            passed,
            checked: None,
            skipped: None,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Entry>,
    pub verdicts: Vec<Verdict>,
    pub details: Vec<Entry>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            details: Vec::new(),
            passed: true,
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.push(entry(key, value));
        self
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.passed &= v.passed;
        self.verdicts.push(v);
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.push(entry(key, value));
    }

    pub fn get_detail(&self, key: &str) -> Option<&Value> {
        self.details.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    pub fn get_verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        for e in &self.inputs {
            render(&mut s, 0, &e.key, &e.value);
        }
        if !self.verdicts.is_empty() {
            s.push_str("verdicts:\n");
        }
        for v in &self.verdicts {
            let mut line = format!("  {} {}", if v.passed { "PASS" } else { "FAIL" }, v.name);
            if let Some(n) = v.checked {
                write!(line, " ({n} checked").unwrap();
                if let Some(k) = v.skipped {
                    write!(line, ", {k} skipped").unwrap();
                }
                line.push(')');
            }
            if let Some(w) = &v.witness {
                write!(line, ": {w}").unwrap();
            }
            s.push_str(&line);
            s.push('\n');
        }
        if !self.details.is_empty() {
            s.push_str("details:\n");
        }
        for e in &self.details {
            render(&mut s, 1, &e.key, &e.value);
        }
        writeln!(s, "result: {}", if self.passed { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

fn entry(key: &str, value: impl Serialize) -> Entry {
    Entry {
        key: key.to_string(),
        value: serde_json::to_value(value).expect("report values serialize"),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("none".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render(s: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(text) = scalar(v) {
        writeln!(s, "{pad}{key}: {text}").unwrap();
        return;
    }
    writeln!(s, "{pad}{key}:").unwrap();
    match v {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render(s, depth + 1, &format!("[{i}]"), item);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                render(s, depth + 1, k, item);
            }
        }
        _ => unreachable!("scalars are rendered inline"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("demo").input("input", "x.json");
        r.verdict(Verdict::new("first", true, None));
        r.verdict(Verdict::new("second", false, Some("a, b".into())));
        r.detail("ids", vec!["0", "1"]);
        r.detail("nested", serde_json::json!({"k": [[1, 2]]}));
        assert!(!r.passed);
        assert_eq!(
            r.to_text(),
            "command: demo\ninput: x.json\nverdicts:\n  PASS first\n  FAIL second: a, b\ndetails:\n  ids: [0, 1]\n  nested:\n    k:\n      [0]: [1, 2]\nresult: FAIL\n"
        );
    }
}
