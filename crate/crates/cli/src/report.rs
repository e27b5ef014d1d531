use std::cell::RefCell;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything a command produced. `timing_ms` is the only field that may
/// differ between two runs on the same input.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub certificates: Value,
    pub notes: Vec<String>,
    pub exit_code: i32,
    pub timing_ms: u128,
}

/// Files read while running a command, in read order.
#[derive(Default)]
pub struct Inputs {
    files: RefCell<Vec<(String, Vec<u8>)>>,
}

impl Inputs {
    pub fn read(&self, path: &str) -> std::io::Result<String> {
        let bytes = std::fs::read(path)?;
        let text = String::from_utf8_lossy(&bytes).into_owned();
        self.files.borrow_mut().push((path.to_string(), bytes));
        Ok(text)
    }

    /// SHA-256 over the length-prefixed contents of every file read.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (_, bytes) in self.files.borrow().iter() {
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
        h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push(format!("{pad}{k}: {s}")),
                    None => {
                        out.push(format!("{pad}{k}:"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push(format!("{pad}- {s}")),
                    None => {
                        out.push(format!("{pad}-"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.extend(scalar(v).map(|s| format!("{pad}{s}"))),
    }
}

impl Report {
    pub fn human(&self) -> String {
        let mut out = vec![format!("reslie {}", self.command.join(" "))];
        if !self.results.is_null() {
            render(&self.results, 0, &mut out);
        }
        if !self.certificates.is_null() {
            out.push("certificates:".into());
            render(&self.certificates, 1, &mut out);
        }
        for n in &self.notes {
            out.push(format!("note: {n}"));
        }
        out.push(format!("inputs: {}", self.inputs_digest));
        out.push(format!("exit {} after {} ms", self.exit_code, self.timing_ms));
        out.join("\n")
    }
}
