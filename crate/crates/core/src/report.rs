//! Reproducible JSON reports.
//!
//! Reports are deterministic byte-for-byte for identical inputs and seed:
//! field order is fixed, numeric outputs are rounded to 12 significant digits
//! before serialization, and the inputs digest is a SHA-256 over the command
//! line and any input file bytes.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Round to 12 significant digits (above every test tolerance, below solver
/// noise amplification).
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn sig12_vec(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| sig12(x)).collect()
}

pub fn digest_hex(parts: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update((p.len() as u64).to_le_bytes());
        hasher.update(p);
    }
    let out = hasher.finalize();
    let mut hex = String::with_capacity(2 * out.len());
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerances: Value,
    pub outputs: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, digest_parts: &[&[u8]]) -> Self {
        Report {
            command: command.into(),
            inputs_digest: format!("sha256:{}", digest_hex(digest_parts)),
            seed: None,
            tolerances: Value::Object(Map::new()),
            outputs: Value::Object(Map::new()),
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn set_tolerance(&mut self, name: &str, value: f64) {
        if let Value::Object(map) = &mut self.tolerances {
            map.insert(name.to_string(), json!(value));
        }
    }

    pub fn set_output(&mut self, name: &str, value: Value) {
        if let Value::Object(map) = &mut self.outputs {
            map.insert(name.to_string(), value);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
