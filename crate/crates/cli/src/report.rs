use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "tempoclass-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(path: &str, bytes: &[u8]) -> Input {
        Input { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Machine-readable envelope shared by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Value,
    pub inputs: Vec<Input>,
    pub result: Value,
    pub stats: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(name: &str, args: Map<String, Value>) -> Report {
        Report {
            schema: SCHEMA,
            command: json!({ "name": name, "args": Value::Object(args) }),
            inputs: Vec::new(),
            result: Value::Null,
            stats: json!({}),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
