//! Canonical JSON and content digests.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const HASH_ALGORITHM: &str = "sha256";

/// Compact JSON with object keys sorted.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    // serde_json's default map is ordered, so a round trip through Value sorts keys.
    let v = serde_json::to_value(value).expect("serializable to JSON");
    serde_json::to_string(&v).expect("Value always serializes")
}

pub fn digest_hex<T: Serialize + ?Sized>(value: &T) -> String {
    hex::encode(Sha256::digest(canonical_json(value).as_bytes()))
}
