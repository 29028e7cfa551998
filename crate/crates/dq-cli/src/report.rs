use serde::Serialize;
use sha2::{Digest, Sha256};

/// Envelope for every command's stdout payload. Timing goes to stderr so
/// identical inputs and seed produce byte-identical stdout.
#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub results: T,
}

pub struct DigestBuilder {
    hasher: Sha256,
}

impl DigestBuilder {
    pub fn new() -> Self {
        DigestBuilder { hasher: Sha256::new() }
    }

    pub fn add(&mut self, label: &str, data: &str) {
        self.hasher.update(label.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update(data.as_bytes());
        self.hasher.update([0u8]);
    }

    pub fn finish(self) -> String {
        let digest = self.hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..16].to_string()
    }
}

pub fn emit<T: Serialize>(report: &RunReport<T>) {
    println!("{}", serde_json::to_string_pretty(report).expect("serializable report"));
}
