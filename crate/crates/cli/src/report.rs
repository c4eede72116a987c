//! Machine-readable command reports: canonical, line-oriented text. Reports
//! are deterministic given the model bytes and arguments; wall-clock timing
//! goes to stderr only.

use sha2::{Digest, Sha256};

/// Exit status contract of the command surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// every verdict passed
    Pass = 0,
    /// a definite negative verdict
    Negative = 1,
    /// at least one verdict undecided
    Inconclusive = 2,
    /// usage, parse, or file error
    Usage = 3,
}

pub struct CommandReport {
    lines: Vec<String>,
}

impl CommandReport {
    pub fn new(command: &str, model_name: &str, digest: &str) -> CommandReport {
        CommandReport {
            lines: vec![
                format!("command: {command}"),
                format!("model: {model_name}"),
                format!("digest: {digest}"),
            ],
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn render(&self, status: Status) -> String {
        let mut out = self.lines.join("\n");
        out.push_str(&format!("\nstatus: {}\n", status as i32));
        out
    }
}

/// Digest of the canonical model serialization; pins reports to exact model
/// bytes.
pub fn model_digest(model: &qbohr_core::QuantumGroupModel) -> String {
    let value = qbohr_core::io::model_to_json(model);
    let text = serde_json::to_string(&value).expect("canonical model serializes");
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    hex::encode(&digest[..6])
}
