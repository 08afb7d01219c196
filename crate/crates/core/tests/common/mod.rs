//! Helpers shared by the integration targets.
#![allow(dead_code)]

use std::path::PathBuf;

use grainforge::engine::{Assembly, InitVariant, ParamSpec};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Straight transcription of the cipher over plain bit vectors. Reads only
/// the parameter lists and evaluates g and h from their ANF, so it shares
/// no stepping or evaluation code with the engine.
pub struct Oracle<'a> {
    p: &'a ParamSpec,
    n: Vec<bool>,
    l: Vec<bool>,
}

fn xor_at(bits: &[bool], idx: &[usize]) -> bool {
    idx.iter().fold(false, |acc, &i| acc ^ bits[i])
}

fn pack(bits: impl Iterator<Item = bool>) -> u64 {
    bits.enumerate().fold(0u64, |acc, (i, b)| acc | (b as u64) << i)
}

impl<'a> Oracle<'a> {
    pub fn load(p: &'a ParamSpec, key: &[bool], iv: &[bool]) -> Self {
        let mut all = key.to_vec();
        all.extend_from_slice(iv);
        all.extend_from_slice(&p.pad);
        let l = all.split_off(p.kappa1);
        Oracle { p, n: all, l }
    }

    fn g(&self) -> bool {
        self.p.g.anf.eval(pack(self.p.s0.iter().map(|&i| self.n[i])))
    }

    fn h(&self) -> bool {
        let from_n: Vec<bool> = self.p.p0.iter().map(|&i| self.n[i]).collect();
        let from_l: Vec<bool> = self.p.q0.iter().map(|&i| self.l[i]).collect();
        let assembled: Vec<bool> = match self.p.assembly {
            Assembly::NFirst => from_n.into_iter().chain(from_l).collect(),
            Assembly::LFirst => from_l.into_iter().chain(from_n).collect(),
        };
        self.p.h.anf.eval(pack(self.p.psi.iter().map(|&j| assembled[j])))
    }

    pub fn output(&self) -> bool {
        xor_at(&self.n, &self.p.p1) ^ xor_at(&self.l, &self.p.q1) ^ self.h()
    }

    fn nlb(&self) -> bool {
        xor_at(&self.l, &self.p.a)
    }

    fn nnb(&self) -> bool {
        xor_at(&self.n, &self.p.s1) ^ self.g()
    }

    fn shift(&mut self, b: bool, b2: bool) {
        self.n.remove(0);
        self.n.push(b);
        self.l.remove(0);
        self.l.push(b2);
    }

    pub fn ns(&mut self) {
        let (b, b2) = (self.nnb() ^ self.l[0], self.nlb());
        self.shift(b, b2);
    }

    pub fn nsi(&mut self) {
        let ob = self.output();
        let (b, b2) = (self.nnb() ^ self.l[0] ^ ob, self.nlb() ^ ob);
        self.shift(b, b2);
    }

    pub fn nsig(&mut self) {
        let ob = self.output();
        let b = self.nnb() ^ self.l[0] ^ ob;
        let b2 = self.nlb() ^ b;
        self.shift(b, b2);
    }

    pub fn init(&mut self, key: &[bool]) {
        let m = self.p.kappa1.max(self.p.kappa2);
        match self.p.init {
            InitVariant::Init1 => (0..2 * m).for_each(|_| self.nsi()),
            InitVariant::InitG => (0..2 * m).for_each(|_| self.nsig()),
            InitVariant::Init2 => {
                (0..5 * m / 2).for_each(|_| self.nsi());
                let half = self.p.kappa / 2;
                for t in 0..half {
                    self.nsi();
                    let (k1, k2) = (self.p.kappa1, self.p.kappa2);
                    self.n[k1 - 1] ^= key[t];
                    self.l[k2 - 1] ^= key[t + half];
                }
                (0..m).for_each(|_| self.ns());
            }
        }
    }

    pub fn keystream(p: &ParamSpec, key: &[bool], iv: &[bool], nbits: usize) -> Vec<bool> {
        let mut o = Oracle::load(p, key, iv);
        o.init(key);
        (0..nbits)
            .map(|_| {
                let z = o.output();
                o.ns();
                z
            })
            .collect()
    }
}

/// Parses a golden file into (key, iv, keystream) hex triples.
pub fn parse_golden(text: &str) -> Vec<(String, String, String)> {
    let val = |line: &str, key: &str| line.strip_prefix(key).map(|v| v.trim().to_string());
    let lines: Vec<&str> = text.lines().collect();
    lines
        .windows(3)
        .filter_map(|w| Some((val(w[0], "key:")?, val(w[1], "iv:")?, val(w[2], "keystream:")?)))
        .collect()
}
