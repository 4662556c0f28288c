//! Command reports: canonical JSON (sorted keys) and an aligned text table.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub subject: String,
    pub result: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub subject: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        let pointer = match e {
            Error::Schema { pointer, .. } | Error::Reference { pointer, .. } | Error::Guard { pointer, .. } => {
                Some(pointer.clone())
            }
            _ => None,
        };
        ErrorInfo {
            code: e.code().to_string(),
            message: e.to_string(),
            pointer,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub items: Vec<Item>,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            ..Default::default()
        }
    }

    pub fn failed(command: Vec<String>, error: &Error) -> Self {
        Report {
            command,
            error: Some(error.into()),
            ..Default::default()
        }
    }

    pub fn item(&mut self, subject: impl Into<String>, result: impl Serialize) {
        let result = serde_json::to_value(result).unwrap_or_else(|e| Value::String(e.to_string()));
        self.items.push(Item {
            subject: subject.into(),
            result,
        });
    }

    pub fn violation(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            subject: subject.into(),
            message: message.into(),
        });
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(_) => EXIT_INPUT,
            None if self.violations.is_empty() => EXIT_PASS,
            None => EXIT_VIOLATION,
        }
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command.join(" "));
        for item in &self.items {
            out.push_str(&format!("\n[{}]\n", item.subject));
            let mut rows = Vec::new();
            flatten("", &item.result, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                out.push_str(&format!("  {k:<width$}  {v}\n"));
            }
        }
        if !self.violations.is_empty() {
            out.push_str("\nviolations:\n");
            for v in &self.violations {
                out.push_str(&format!("  {}: {}\n", v.subject, v.message));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("\nerror {}: {}\n", e.code, e.message));
        }
        out.push_str(&format!(
            "\nstatus: {}\n",
            match self.exit_code() {
                EXIT_PASS => "pass",
                EXIT_VIOLATION => "violation",
                _ => "input error",
            }
        ));
        out
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(&key(k), v, rows);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
