//! Report envelope shared by the CLI emitters.
//!
//! Reports are plain serde structs serialized with `serde_json`; field order
//! is declaration order and every collection inside is a `Vec` or `BTreeMap`,
//! so the same inputs always produce byte-identical JSON.

use serde::Serialize;

/// Version stamp carried by every emitted JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Top-level JSON document: a stamped list of results.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub subcommand: String,
    pub seed: Option<u64>,
    pub results: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(subcommand: impl Into<String>, seed: Option<u64>, results: T) -> Self {
        Envelope { schema_version: SCHEMA_VERSION, subcommand: subcommand.into(), seed, results }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_field_order_and_version() {
        let e = Envelope::new("verify", Some(7), vec![1, 2, 3]);
        let json = e.to_json();
        let version_pos = json.find("schema_version").unwrap();
        let sub_pos = json.find("subcommand").unwrap();
        let seed_pos = json.find("seed").unwrap();
        let results_pos = json.find("results").unwrap();
        assert!(version_pos < sub_pos && sub_pos < seed_pos && seed_pos < results_pos);
        assert!(json.contains("\"schema_version\": 1"));
    }

    #[test]
    fn byte_identical_serialization() {
        let a = Envelope::new("norms", None, vec![0.5, 0.25]).to_json();
        let b = Envelope::new("norms", None, vec![0.5, 0.25]).to_json();
        assert_eq!(a, b);
    }
}
