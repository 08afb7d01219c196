mod common;

use common::{golden_dir, parse_golden, Oracle};
use grainforge::engine::{bits_to_hex, hex_to_bits, keystream};
use grainforge::instances::{get_instance, render_vectors, vector_pairs, INSTANCE_NAMES, VECTOR_NBITS};

#[test]
fn shipped_vectors_match_oracle_and_engine() {
    for name in INSTANCE_NAMES {
        let p = get_instance(name).unwrap();
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).unwrap();
        assert_eq!(text, render_vectors(&p).unwrap(), "{name}: engine output drifted from shipped file");
        let triples = parse_golden(&text);
        assert_eq!(triples.len(), 2);
        for ((key, iv), (kh, ih, zh)) in vector_pairs(&p).into_iter().zip(triples) {
            assert_eq!(bits_to_hex(&key), kh);
            assert_eq!(bits_to_hex(&iv), ih);
            let oracle = Oracle::keystream(&p, &key, &iv, VECTOR_NBITS);
            assert_eq!(bits_to_hex(&oracle), zh, "{name}: oracle disagrees with shipped vector");
        }
    }
}

#[test]
fn oracle_matches_engine_on_random_inputs() {
    let mut x = 0x1234_5678_9abc_def1u64;
    let mut bit = || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        x & 1 == 1
    };
    for name in INSTANCE_NAMES {
        let p = get_instance(name).unwrap();
        for _ in 0..3 {
            let key: Vec<bool> = (0..p.kappa).map(|_| bit()).collect();
            let iv: Vec<bool> = (0..p.v).map(|_| bit()).collect();
            assert_eq!(Oracle::keystream(&p, &key, &iv, 96), keystream(&p, &key, &iv, 96, false).unwrap(), "{name}");
        }
    }
}

#[test]
fn grain_v1_published_vector() {
    let p = get_instance("grainv1").unwrap();
    let key = hex_to_bits("0123456789abcdef1234", 80).unwrap();
    let iv = hex_to_bits("0123456789abcdef", 64).unwrap();
    assert_eq!(bits_to_hex(&Oracle::keystream(&p, &key, &iv, 80)), "7f362bd3f7abae203664");
}
