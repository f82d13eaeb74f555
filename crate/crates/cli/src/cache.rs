//! Optional on-disk memoization of KL tables between runs, content-addressed
//! by a hash of the root datum. Enabled by setting `DLHECKE_CACHE_DIR`.

use std::path::PathBuf;

use serde_json::Value;
use sha2::{Digest, Sha256};

use dlhecke_core::WeylGroup;

pub const CACHE_ENV: &str = "DLHECKE_CACHE_DIR";

fn cache_path(group: &WeylGroup) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let mut hasher = Sha256::new();
    hasher.update(b"kl-table-v1:");
    hasher.update(group.signature().to_le_bytes());
    hasher.update((group.order() as u64).to_le_bytes());
    let key = hasher.finalize();
    let hex: String = key.iter().map(|b| format!("{b:02x}")).collect();
    Some(PathBuf::from(dir).join(format!("{hex}.json")))
}

pub fn load(group: &WeylGroup) -> Option<Value> {
    let path = cache_path(group)?;
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(group: &WeylGroup, rows: &Value) {
    let Some(path) = cache_path(group) else {
        return;
    };
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    if let Ok(text) = serde_json::to_string(rows) {
        let _ = std::fs::write(path, text);
    }
}
