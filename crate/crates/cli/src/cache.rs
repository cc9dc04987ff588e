//! On-disk inventory cache. Entries are keyed by a SHA-256 of the quiver,
//! field, bound, seed and format version; anything unreadable is rebuilt.

use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use affquiver::canon::{build_inventory, Inventory};
use affquiver::exactfield::Field;
use affquiver::quiver::{DimVector, Quiver};
use affquiver::rep::field_to_json;
use affquiver::Result;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u64 = 1;

fn key(q: &Quiver, f: Field, bound: &DimVector, seed: u64) -> String {
    let material = json!({
        "version": CACHE_VERSION,
        "quiver": q.to_json(),
        "field": field_to_json(f),
        "bound": bound.0,
        "seed": seed,
    });
    let digest = Sha256::digest(material.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn load(path: &Path, key: &str) -> Option<Inventory> {
    let text = fs::read_to_string(path).ok()?;
    let v: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(_) => {
            eprintln!("warning: cache entry {} is corrupt, rebuilding", path.display());
            return None;
        }
    };
    if v.get("version").and_then(Value::as_u64) != Some(CACHE_VERSION) {
        return None;
    }
    if v.get("key").and_then(Value::as_str) != Some(key) {
        eprintln!("warning: cache entry {} has a foreign key, rebuilding", path.display());
        return None;
    }
    match v.get("inventory").map(Inventory::from_json) {
        Some(Ok(inv)) => Some(inv),
        _ => {
            eprintln!("warning: cache entry {} is corrupt, rebuilding", path.display());
            None
        }
    }
}

fn store(dir: &Path, path: &Path, key: &str, inv: &Inventory) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let lock = dir.join(".lock");
    // another writer holds the lock: skip, the entry is only an optimization
    if OpenOptions::new().write(true).create_new(true).open(&lock).is_err() {
        return;
    }
    let body = json!({"version": CACHE_VERSION, "key": key, "inventory": inv.to_json()});
    let tmp = path.with_extension("tmp");
    if fs::write(&tmp, body.to_string()).is_ok() {
        let _ = fs::rename(&tmp, path);
    }
    let _ = fs::remove_file(&lock);
}

/// The inventory for `(q, f, bound, seed)`, from `dir` when a valid entry
/// exists there, otherwise built (and stored when `dir` is given).
pub fn inventory(dir: Option<&Path>, q: &Arc<Quiver>, f: Field, bound: &DimVector, seed: u64) -> Result<Inventory> {
    let Some(dir) = dir else {
        return build_inventory(q, f, bound, seed);
    };
    let k = key(q, f, bound, seed);
    let path: PathBuf = dir.join(format!("inventory-{k}.json"));
    if let Some(inv) = load(&path, &k) {
        return Ok(inv);
    }
    let inv = build_inventory(q, f, bound, seed)?;
    store(dir, &path, &k, &inv);
    Ok(inv)
}
