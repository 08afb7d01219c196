//! The nine registered ciphers, toy instances and a config-file reader.

mod config;
mod data;
mod toy;
mod vectors;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::engine::{balanced_pad, interleave_psi, EngineError, GrainParams, ParamSpec};
use crate::funlib::{build_named, FunlibError};

pub use config::{parse_config, render_config};
pub use toy::{make_toy, ToySpec};
pub use vectors::{render_vectors, vector_pairs, VECTOR_NBITS};

use data::{Pad, Psi, INSTANCES};

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("unknown instance {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Funlib(#[from] FunlibError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Taps(#[from] crate::tapgen::TapError),
    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("no primitive feedback polynomial of degree {degree} found in {tries} tries")]
    NoPrimitive { degree: usize, tries: usize },
    #[error("toy sizes must be at most {max} bits")]
    ToyTooLarge { max: usize },
}

pub const INSTANCE_NAMES: [&str; 9] = ["grainv1", "grain128a", "r80", "r128", "w128", "r192", "w192", "r256", "w256"];

/// Where the transcribed lists come from, for each registered instance.
pub fn instance_source(name: &str) -> Option<&'static str> {
    INSTANCES.iter().find(|d| d.name == name).map(|d| d.source)
}

fn normalize(name: &str) -> String {
    name.to_ascii_lowercase().replace(['-', '_', ' '], "")
}

fn build(d: &data::InstanceData) -> Result<GrainParams, InstanceError> {
    let g = Arc::new(build_named(d.g)?);
    let h = Arc::new(build_named(d.h)?);
    let hn = d.p0.len() + d.q0.len();
    let psi = match d.psi {
        Psi::Identity => (0..hn).collect(),
        Psi::Interleave => interleave_psi(d.p0.len(), d.q0.len()),
        Psi::Explicit(p) => p.to_vec(),
    };
    let c = d.kappa1 + d.kappa2 - d.kappa - d.v;
    let pad = match d.pad {
        Pad::Ones => vec![true; c],
        Pad::OnesThenZero => (0..c).map(|i| i + 1 < c).collect(),
        Pad::Balanced => balanced_pad(c),
    };
    let spec = ParamSpec {
        name: d.name.to_string(),
        kappa: d.kappa,
        v: d.v,
        kappa1: d.kappa1,
        kappa2: d.kappa2,
        tau: d.tau.to_vec(),
        a: d.a.to_vec(),
        s0: d.s0.to_vec(),
        s1: d.s1.to_vec(),
        p0: d.p0.to_vec(),
        p1: d.p1.to_vec(),
        q0: d.q0.to_vec(),
        q1: d.q1.to_vec(),
        g,
        h,
        psi,
        assembly: d.assembly,
        delta: d.delta,
        pad,
        init: d.init,
        max_keystream_log2: if d.legacy { None } else { Some(64) },
        errata: d.errata.iter().map(|s| s.to_string()).collect(),
        legacy: d.legacy,
    };
    Ok(GrainParams::new(spec)?)
}

/// Registered instance by name ("r80", "R-80", "grain128a", ...).
/// Results are cached; the returned value shares function tables.
pub fn get_instance(name: &str) -> Result<GrainParams, InstanceError> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, GrainParams>>> = OnceLock::new();
    let key = normalize(name);
    let d = INSTANCES.iter().find(|d| d.name == key).ok_or_else(|| InstanceError::UnknownName(name.to_string()))?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("instance cache").get(d.name) {
        return Ok(p.clone());
    }
    let p = build(d)?;
    cache.lock().expect("instance cache").insert(d.name, p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{validate_params, Status};
    use crate::gf2poly::Gf2Poly;
    use crate::tapgen::{check_cartesian, p1_s0_lists};

    #[test]
    fn table_row_fields() {
        let r80 = get_instance("R-80").unwrap();
        assert_eq!((r80.kappa1, r80.kappa2, r80.a.len(), r80.s0.len(), r80.p0.len() + r80.q0.len(), r80.delta), (80, 80, 6, 10, 7, 16));
        assert_eq!(r80.psi, vec![3, 0, 4, 1, 5, 2, 6]);
        let w256 = get_instance("w256").unwrap();
        assert_eq!((w256.kappa2, w256.state_bits()), (208, 464));
        let g = get_instance("grain128a").unwrap();
        assert_eq!(g.psi, vec![7, 0, 1, 2, 8, 3, 4, 5, 6]);
        assert_eq!(g.assembly, crate::engine::Assembly::LFirst);
        assert!(get_instance("nosuch").is_err());
    }

    #[test]
    fn all_instances_validate() {
        for name in INSTANCE_NAMES {
            let p = get_instance(name).unwrap();
            let r = validate_params(&p, !p.legacy);
            assert!(r.ok(), "{r}");
            assert_eq!(p.a.len(), 6);
            assert_eq!(p.pad.len(), p.kappa1 + p.kappa2 - p.kappa - p.v);
            assert!(Gf2Poly::from_exponents(&p.tau).is_irreducible(), "{name}");
            if !p.legacy {
                assert_eq!(r.summary(), "conditions: 6/6 pass", "{name}");
                let (p1, s0) = p1_s0_lists(p.p1.len(), p.s0.len());
                assert_eq!((p1, s0), (p.p1.clone(), p.s0.clone()), "{name}");
                assert!(check_cartesian(&p.p1, &p.s0));
            }
        }
    }

    #[test]
    fn legacy_overlaps_are_warnings() {
        let v1 = get_instance("grainv1").unwrap();
        let r = validate_params(&v1, false);
        let c1 = r.condition(1).unwrap();
        assert_eq!(c1.status, Status::Warn);
        assert!(c1.detail.contains("63 in S0,P0"), "{}", c1.detail);
        assert!(!validate_params(&v1, true).ok());
        let a = get_instance("grain128a").unwrap();
        assert!(validate_params(&a, false).condition(1).unwrap().detail.contains("95 in S0,P0"));
    }

    #[test]
    fn pads() {
        let bits = |p: &GrainParams| p.pad.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        assert_eq!(bits(&get_instance("r80").unwrap()), "1010101010101010");
        assert_eq!(bits(&get_instance("w128").unwrap()), "1010101010101010");
        assert_eq!(get_instance("r128").unwrap().pad.len(), 32);
        assert_eq!(bits(&get_instance("grainv1").unwrap()), "1".repeat(16));
        assert_eq!(bits(&get_instance("grain128a").unwrap()), format!("{}0", "1".repeat(31)));
        for name in ["r256", "w256"] {
            let p = get_instance(name).unwrap();
            assert_eq!(p.v, 192);
            assert!(!p.errata.is_empty());
        }
    }
}

#[cfg(test)]
mod known_answers {
    use super::*;
    use crate::engine::{bits_to_hex, hex_to_bits, keystream};

    #[test]
    fn grain_v1_reference_vectors() {
        let p = get_instance("grainv1").unwrap();
        let z = keystream(&p, &[false; 80], &[false; 64], 80, false).unwrap();
        assert_eq!(bits_to_hex(&z), "dee931cf1662a72f77d0");
    }

    #[test]
    fn grain_v1_nonzero_vector() {
        let p = get_instance("grainv1").unwrap();
        let k = hex_to_bits("0123456789abcdef1234", 80).unwrap();
        let iv = hex_to_bits("0123456789abcdef", 64).unwrap();
        assert_eq!(bits_to_hex(&keystream(&p, &k, &iv, 80, false).unwrap()), "7f362bd3f7abae203664");
    }

    /// The reference lists c0207f221660650b6a952ae26586136f with the first
    /// bit in the most significant position of each byte.
    #[test]
    fn grain128a_zero_vector() {
        let p = get_instance("grain128a").unwrap();
        let z = keystream(&p, &[false; 128], &[false; 96], 128, false).unwrap();
        let msb_first: String = z
            .chunks(8)
            .map(|c| format!("{:02x}", c.iter().fold(0u8, |acc, &b| acc << 1 | b as u8)))
            .collect();
        assert_eq!(msb_first, "c0207f221660650b6a952ae26586136f");
    }
}
