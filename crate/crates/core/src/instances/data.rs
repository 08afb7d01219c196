use crate::engine::{Assembly, InitVariant};

pub(super) enum Psi {
    Identity,
    /// (b1, a1, b2, a2, b3, a3, a4.., b4..) on N-first input.
    Interleave,
    Explicit(&'static [usize]),
}

pub(super) enum Pad {
    Ones,
    /// 1^(c-1) 0
    OnesThenZero,
    /// (10)^c
    Balanced,
}

pub(super) struct InstanceData {
    pub name: &'static str,
    pub source: &'static str,
    pub kappa: usize,
    pub v: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    pub tau: &'static [usize],
    pub a: &'static [usize],
    pub s0: &'static [usize],
    pub s1: &'static [usize],
    pub p0: &'static [usize],
    pub p1: &'static [usize],
    pub q0: &'static [usize],
    pub q1: &'static [usize],
    pub g: &'static str,
    pub h: &'static str,
    pub psi: Psi,
    pub assembly: Assembly,
    pub delta: usize,
    pub pad: Pad,
    pub init: InitVariant,
    pub legacy: bool,
    pub errata: &'static [&'static str],
}

const S0_128: &[usize] = &[5, 9, 13, 17, 21, 25, 29, 33, 37, 41, 45, 49, 97, 93, 89, 85, 81, 77, 73, 69, 65, 61, 57, 53];
const S0_192: &[usize] = &[
    6, 11, 16, 21, 26, 31, 36, 41, 46, 51, 56, 61, 66, 71, 76, 151, 146, 141, 136, 131, 126, 121, 116, 111, 106, 101, 96, 91,
    86, 81,
];
const S0_256: &[usize] = &[
    7, 13, 19, 25, 31, 37, 43, 49, 55, 61, 67, 73, 79, 85, 91, 97, 103, 109, 217, 211, 205, 199, 193, 187, 181, 175, 169, 163,
    157, 151, 145, 139, 133, 127, 121, 115,
];

const V192_NOTE: &str = "v = 192 as in the IV-size paragraph and the pad length; the parameter table lists 128";

pub(super) const INSTANCES: &[InstanceData] = &[
    InstanceData {
        name: "grainv1",
        source: "Grain v1 listing of the legacy parameter sets",
        kappa: 80,
        v: 64,
        kappa1: 80,
        kappa2: 80,
        tau: &[80, 67, 57, 42, 29, 18, 0],
        a: &[0, 13, 23, 38, 51, 62],
        s0: &[9, 15, 21, 28, 33, 37, 45, 52, 60, 63],
        s1: &[0, 14, 62],
        p0: &[63],
        p1: &[1, 2, 4, 10, 31, 43, 56],
        q0: &[3, 25, 46, 64],
        q1: &[],
        g: "grainv1_g",
        h: "grainv1_h",
        psi: Psi::Identity,
        assembly: Assembly::LFirst,
        delta: 16,
        pad: Pad::Ones,
        init: InitVariant::Init1,
        legacy: true,
        errata: &[],
    },
    InstanceData {
        name: "grain128a",
        source: "Grain-128a listing of the legacy parameter sets",
        kappa: 128,
        v: 96,
        kappa1: 128,
        kappa2: 128,
        tau: &[128, 121, 90, 58, 47, 32, 0],
        a: &[0, 7, 38, 70, 81, 96],
        s0: &[3, 67, 11, 13, 17, 18, 27, 59, 40, 48, 61, 65, 68, 84, 88, 92, 93, 95, 22, 24, 25, 70, 78, 82],
        s1: &[0, 26, 56, 91, 96],
        p0: &[12, 95],
        p1: &[2, 15, 36, 45, 64, 73, 89],
        q0: &[8, 13, 20, 42, 60, 79, 94],
        q1: &[93],
        g: "grain128a_g",
        h: "grain128a_h",
        psi: Psi::Explicit(&[7, 0, 1, 2, 8, 3, 4, 5, 6]),
        assembly: Assembly::LFirst,
        delta: 32,
        pad: Pad::OnesThenZero,
        init: InitVariant::Init1,
        legacy: true,
        errata: &[],
    },
    InstanceData {
        name: "r80",
        source: "R-80 listing of the new proposals",
        kappa: 80,
        v: 64,
        kappa1: 80,
        kappa2: 80,
        tau: &[80, 77, 65, 29, 19, 16, 0],
        a: &[0, 3, 15, 51, 61, 64],
        s0: &[7, 13, 19, 25, 31, 61, 55, 49, 43, 37],
        s1: &[0, 54, 57],
        p0: &[15, 16, 39],
        p1: &[1, 2, 3, 4, 5, 6],
        q0: &[5, 12, 16, 19],
        q1: &[11],
        g: "g10",
        h: "h7",
        psi: Psi::Interleave,
        assembly: Assembly::NFirst,
        delta: 16,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &[],
    },
    InstanceData {
        name: "r128",
        source: "R-128 listing of the new proposals",
        kappa: 128,
        v: 96,
        kappa1: 128,
        kappa2: 128,
        tau: &[128, 108, 97, 54, 46, 32, 0],
        a: &[0, 20, 31, 74, 82, 96],
        s0: S0_128,
        s1: &[0, 36, 55, 71, 91],
        p0: &[6, 31, 39, 50, 67],
        p1: &[1, 2, 3, 4],
        q0: &[1, 12, 38, 87, 97],
        q1: &[5, 10, 30, 85],
        g: "g24",
        h: "h10",
        psi: Psi::Identity,
        assembly: Assembly::NFirst,
        delta: 31,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &["pad (10)^16 fills the 32 spare bits; the listing says (10)^32"],
    },
    InstanceData {
        name: "w128",
        source: "W-128 listing of the new proposals",
        kappa: 128,
        v: 96,
        kappa1: 128,
        kappa2: 112,
        tau: &[112, 93, 84, 74, 43, 32, 0],
        a: &[0, 19, 28, 38, 69, 80],
        s0: S0_128,
        s1: &[0, 28, 54, 67, 68],
        p0: &[11, 26, 30, 44, 76],
        p1: &[1, 2, 3, 4],
        q0: &[11, 36, 56, 73, 76],
        q1: &[13, 31, 39, 77],
        g: "g24",
        h: "h10",
        psi: Psi::Identity,
        assembly: Assembly::NFirst,
        delta: 31,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &["h is h10 on U1..U5, V1..V5; the listing writes V1..V3"],
    },
    InstanceData {
        name: "r192",
        source: "R-192 listing of the new proposals",
        kappa: 192,
        v: 128,
        kappa1: 192,
        kappa2: 192,
        tau: &[192, 131, 123, 118, 79, 32, 0],
        a: &[0, 61, 69, 74, 113, 160],
        s0: S0_192,
        s1: &[0, 22, 68, 75, 82, 89, 129],
        p0: &[35, 69, 83, 88, 98, 104, 150],
        p1: &[1, 2, 3, 4, 5],
        q0: &[1, 26, 57, 77, 83, 103, 116, 127],
        q1: &[60, 75, 101, 122, 123],
        g: "g30",
        h: "h15",
        psi: Psi::Interleave,
        assembly: Assembly::NFirst,
        delta: 32,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &[],
    },
    InstanceData {
        name: "w192",
        source: "W-192 listing of the new proposals",
        kappa: 192,
        v: 128,
        kappa1: 192,
        kappa2: 160,
        tau: &[160, 142, 76, 57, 44, 32, 0],
        a: &[0, 18, 84, 103, 116, 128],
        s0: S0_192,
        s1: &[0, 43, 53, 72, 75, 123, 140],
        p0: &[30, 54, 58, 80, 112, 156, 160],
        p1: &[1, 2, 3, 4, 5],
        q0: &[10, 43, 51, 91, 96, 110, 111, 127],
        q1: &[8, 26, 108, 113, 115],
        g: "g30",
        h: "h15",
        psi: Psi::Interleave,
        assembly: Assembly::NFirst,
        delta: 32,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &[],
    },
    InstanceData {
        name: "r256",
        source: "R-256 listing of the new proposals",
        kappa: 256,
        v: 192,
        kappa1: 256,
        kappa2: 256,
        tau: &[256, 203, 138, 76, 46, 32, 0],
        a: &[0, 53, 118, 180, 210, 224],
        s0: S0_256,
        s1: &[0, 16, 26, 83, 84, 92, 134, 160, 192],
        p0: &[8, 74, 99, 131, 135, 136, 144, 189, 218],
        p1: &[1, 2, 3, 4, 5, 6],
        q0: &[1, 11, 61, 110, 131, 133, 170, 198, 208, 218],
        q1: &[66, 74, 90, 97, 124, 193],
        g: "g36",
        h: "h19",
        psi: Psi::Interleave,
        assembly: Assembly::NFirst,
        delta: 32,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &[V192_NOTE],
    },
    InstanceData {
        name: "w256",
        source: "W-256 listing of the new proposals",
        kappa: 256,
        v: 192,
        kappa1: 256,
        kappa2: 208,
        tau: &[208, 169, 164, 114, 35, 32, 0],
        a: &[0, 39, 44, 94, 173, 176],
        s0: S0_256,
        s1: &[0, 17, 38, 41, 89, 132, 146, 186, 190],
        p0: &[8, 72, 75, 99, 128, 176, 188, 212, 215],
        p1: &[1, 2, 3, 4, 5, 6],
        q0: &[22, 53, 54, 73, 82, 86, 99, 143, 148, 167],
        q1: &[8, 70, 118, 151, 157, 171],
        g: "g36",
        h: "h19",
        psi: Psi::Interleave,
        assembly: Assembly::NFirst,
        delta: 32,
        pad: Pad::Balanced,
        init: InitVariant::InitG,
        legacy: false,
        errata: &[V192_NOTE],
    },
];
