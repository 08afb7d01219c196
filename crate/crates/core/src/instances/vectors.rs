use crate::engine::{bits_to_hex, keystream, GrainParams, ParamSpec};

use super::InstanceError;

pub const VECTOR_NBITS: usize = 256;

fn pattern_bits(len: usize, bytes: &[u8]) -> Vec<bool> {
    (0..len).map(|i| bytes[(i / 8) % bytes.len()] >> (i % 8) & 1 == 1).collect()
}

/// The two fixed (key, IV) pairs used for shipped vectors: all zero, and a
/// repeating byte pattern.
pub fn vector_pairs(p: &ParamSpec) -> [(Vec<bool>, Vec<bool>); 2] {
    let key = [0x01, 0x23, 0x45, 0x67, 0x89, 0xab, 0xcd, 0xef];
    let iv = [0xfe, 0xdc, 0xba, 0x98, 0x76, 0x54, 0x32, 0x10];
    [
        (vec![false; p.kappa], vec![false; p.v]),
        (pattern_bits(p.kappa, &key), pattern_bits(p.v, &iv)),
    ]
}

/// Text block per instance: one `key`/`iv`/`keystream` triple per pair.
pub fn render_vectors(p: &GrainParams) -> Result<String, InstanceError> {
    let mut out = format!("instance: {}\nnbits: {VECTOR_NBITS}\n", p.name);
    for (key, iv) in vector_pairs(p) {
        let z = keystream(p, &key, &iv, VECTOR_NBITS as u128, false)?;
        out += &format!("key: {}\niv: {}\nkeystream: {}\n", bits_to_hex(&key), bits_to_hex(&iv), bits_to_hex(&z));
    }
    Ok(out)
}
