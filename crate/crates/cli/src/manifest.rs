use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use gdl_core::{FieldSpec, FORMAT_VERSION};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Failure;

/// Provenance embedded in every output document.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub tool: String,
    pub args: Vec<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub threads: usize,
    pub cap: u64,
    pub wall_time_ms: u64,
    pub digests: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_json(v: &impl Serialize) -> String {
    sha256_hex(&serde_json::to_vec(v).expect("serializable"))
}

/// The result of one command before it is wrapped with the manifest.
pub struct Outcome {
    pub result: Value,
    pub field: Option<FieldSpec>,
    pub digests: BTreeMap<String, String>,
    /// A check the command was asked to make did not hold.
    pub failed: Option<String>,
    pub markdown: Option<String>,
    /// Write the result at the top level with the manifest beside it
    /// (family files) instead of under "result".
    pub flatten: bool,
}

impl Outcome {
    pub fn new(result: impl Serialize) -> Self {
        let result = serde_json::to_value(result).expect("serializable");
        let mut digests = BTreeMap::new();
        digests.insert("result".to_string(), digest_json(&result));
        Outcome { result, field: None, digests, failed: None, markdown: None, flatten: false }
    }

    pub fn field(mut self, f: &FieldSpec) -> Self {
        self.field = Some(f.clone());
        self
    }

    pub fn fail_if(mut self, bad: bool, what: impl Into<String>) -> Self {
        if bad && self.failed.is_none() {
            self.failed = Some(what.into());
        }
        self
    }
}

pub fn render(outcome: &Outcome, manifest: &RunManifest) -> Vec<u8> {
    let doc = if outcome.flatten {
        let mut obj = outcome.result.as_object().cloned().unwrap_or_default();
        obj.insert("manifest".into(), serde_json::to_value(manifest).expect("serializable"));
        Value::Object(obj)
    } else {
        serde_json::json!({ "version": FORMAT_VERSION, "manifest": manifest, "result": outcome.result })
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("serializable");
    out.push(b'\n');
    out
}

pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}
