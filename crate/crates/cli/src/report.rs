use std::collections::BTreeMap;

use qcat_core::Verdict;
use serde::{Deserialize, Serialize};

/// What every subcommand prints. No timings, so that runs on the same
/// inputs are byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub counts: BTreeMap<String, usize>,
    pub tool_version: String,
    pub result: serde_json::Value,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            verdict: None,
            counts: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            result: serde_json::Value::Null,
        }
    }

    pub fn count(&mut self, key: &str, value: usize) -> &mut Self {
        self.counts.insert(key.to_string(), value);
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            None | Some(Verdict::True) => 0,
            Some(_) => 1,
        }
    }
}
