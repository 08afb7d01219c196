use std::fmt;

use super::bitreg::BitReg;
use super::params::{GrainParams, Tap};
use super::EngineError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherState {
    pub n: BitReg,
    pub l: BitReg,
    /// Clock count; negative after stepping back past the start.
    pub t: i64,
}

impl CipherState {
    pub fn from_bits(n: &[bool], l: &[bool]) -> Self {
        CipherState { n: BitReg::from_bits(n), l: BitReg::from_bits(l), t: 0 }
    }

    pub fn zero(p: &GrainParams) -> Self {
        CipherState { n: BitReg::zeros(p.kappa1), l: BitReg::zeros(p.kappa2), t: 0 }
    }

    pub fn n_bits(&self) -> Vec<bool> {
        self.n.to_bits()
    }

    pub fn l_bits(&self) -> Vec<bool> {
        self.l.to_bits()
    }
}

impl fmt::Display for CipherState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={:?} L={:?} t={}", self.n, self.l, self.t)
    }
}

/// K || IV || pad, split across N then L.
pub fn load_state(p: &GrainParams, key: &[bool], iv: &[bool]) -> Result<CipherState, EngineError> {
    if key.len() != p.kappa {
        return Err(EngineError::Length { what: "key", expected: p.kappa, got: key.len() });
    }
    if iv.len() != p.v {
        return Err(EngineError::Length { what: "iv", expected: p.v, got: iv.len() });
    }
    let all: Vec<bool> = key.iter().chain(iv).chain(&p.pad).copied().collect();
    let (n, l) = all.split_at(p.kappa1);
    Ok(CipherState::from_bits(n, l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepMode {
    Ns,
    Nsi,
    Nsig,
}

impl fmt::Display for StepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepMode::Ns => "NS",
            StepMode::Nsi => "NSI",
            StepMode::Nsig => "NSIG",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Components {
    pub nlb: bool,
    pub nnb: bool,
    pub ob: bool,
}

#[inline]
fn xor_taps(r: &BitReg, taps: &[usize], off: usize) -> bool {
    taps.iter().fold(false, |acc, &i| acc ^ r.get(i + off))
}

#[inline]
fn nlb_at(p: &GrainParams, s: &CipherState, off: usize) -> bool {
    xor_taps(&s.l, &p.a, off)
}

#[inline]
fn nnb_at(p: &GrainParams, s: &CipherState, off: usize) -> bool {
    let mut x = 0u64;
    for (k, &i) in p.s0.iter().enumerate() {
        x |= (s.n.get(i + off) as u64) << k;
    }
    xor_taps(&s.n, &p.s1, off) ^ p.g_eval.eval(x)
}

#[inline]
fn ob_at(p: &GrainParams, s: &CipherState, off: usize) -> bool {
    let mut x = 0u64;
    for (k, tap) in p.h_taps.iter().enumerate() {
        let b = match *tap {
            Tap::N(i) => s.n.get(i + off),
            Tap::L(i) => s.l.get(i + off),
        };
        x |= (b as u64) << k;
    }
    xor_taps(&s.n, &p.p1, off) ^ xor_taps(&s.l, &p.q1, off) ^ p.h_eval.eval(x)
}

pub fn component_bits(p: &GrainParams, s: &CipherState) -> Components {
    Components { nlb: nlb_at(p, s, 0), nnb: nnb_at(p, s, 0), ob: ob_at(p, s, 0) }
}

pub fn output_bit(p: &GrainParams, s: &CipherState) -> bool {
    ob_at(p, s, 0)
}

/// New top bits (b for N, b′ for L) under `mode`.
pub fn feedback(p: &GrainParams, s: &CipherState, mode: StepMode) -> (bool, bool) {
    let nlb = nlb_at(p, s, 0);
    let nnb = nnb_at(p, s, 0);
    let lam0 = s.l.get(0);
    match mode {
        StepMode::Ns => (nnb ^ lam0, nlb),
        StepMode::Nsi => {
            let ob = ob_at(p, s, 0);
            (nnb ^ lam0 ^ ob, nlb ^ ob)
        }
        StepMode::Nsig => {
            let b = nnb ^ lam0 ^ ob_at(p, s, 0);
            (b, nlb ^ b)
        }
    }
}

pub fn step_in_place(p: &GrainParams, s: &mut CipherState, mode: StepMode) {
    let (b, b2) = feedback(p, s, mode);
    s.n.shift_in(b);
    s.l.shift_in(b2);
    s.t += 1;
}

pub fn step(p: &GrainParams, s: &CipherState, mode: StepMode) -> CipherState {
    let mut out = s.clone();
    step_in_place(p, &mut out, mode);
    out
}

pub fn step_inverse_in_place(p: &GrainParams, s: &mut CipherState, mode: StepMode) -> Result<(), EngineError> {
    let ok = match mode {
        StepMode::Ns => p.ns_invertible(),
        StepMode::Nsi | StepMode::Nsig => p.nsi_invertible(),
    };
    if !ok {
        return Err(EngineError::NotInvertible(mode));
    }
    let b = s.n.get(p.kappa1 - 1);
    let b2 = s.l.get(p.kappa2 - 1);
    s.n.shift_out(false);
    s.l.shift_out(false);
    // With η0 = λ0 = 0 the feedback terms below omit exactly those two bits.
    let nlb0 = nlb_at(p, s, 0);
    let nnb0 = nnb_at(p, s, 0);
    let (lam0, eta0) = match mode {
        StepMode::Ns => {
            let lam0 = b2 ^ nlb0;
            (lam0, b ^ lam0 ^ nnb0)
        }
        StepMode::Nsi => {
            let ob = ob_at(p, s, 0);
            let lam0 = b2 ^ ob ^ nlb0;
            (lam0, b ^ ob ^ lam0 ^ nnb0)
        }
        StepMode::Nsig => {
            let ob = ob_at(p, s, 0);
            let lam0 = b ^ b2 ^ nlb0;
            (lam0, b ^ ob ^ lam0 ^ nnb0)
        }
    };
    s.l.set(0, lam0);
    s.n.set(0, eta0);
    s.t -= 1;
    Ok(())
}

pub fn step_inverse(p: &GrainParams, s: &CipherState, mode: StepMode) -> Result<CipherState, EngineError> {
    let mut out = s.clone();
    step_inverse_in_place(p, &mut out, mode)?;
    Ok(out)
}

/// Produces `i` output bits and advances `i` NS steps, computing every
/// feedback and output bit from the current state. Needs the taps to sit at
/// most κ − δ so no computed bit depends on another one from the same call.
pub fn step_wide_in_place(p: &GrainParams, s: &mut CipherState, i: usize, out: &mut Vec<bool>) -> Result<(), EngineError> {
    if i == 0 || i > p.delta {
        return Err(EngineError::WideRange { i, delta: p.delta });
    }
    if !wide_ok(p) {
        return Err(EngineError::WideTaps);
    }
    let mut nb = [false; 64];
    let mut lb = [false; 64];
    let chunk = i.min(64);
    let mut done = 0;
    while done < i {
        let w = chunk.min(i - done);
        for j in 0..w {
            out.push(ob_at(p, s, j));
            nb[j] = nnb_at(p, s, j) ^ s.l.get(j);
            lb[j] = nlb_at(p, s, j);
        }
        for j in 0..w {
            s.n.shift_in(nb[j]);
            s.l.shift_in(lb[j]);
        }
        s.t += w as i64;
        done += w;
    }
    Ok(())
}

fn wide_ok(p: &GrainParams) -> bool {
    let max_n = [&p.s0, &p.s1, &p.p0, &p.p1].iter().flat_map(|l| l.iter()).max().copied().unwrap_or(0);
    let max_l = [&p.a, &p.q0, &p.q1].iter().flat_map(|l| l.iter()).max().copied().unwrap_or(0);
    max_n + p.delta <= p.kappa1 && max_l + p.delta <= p.kappa2
}

pub fn step_wide(p: &GrainParams, s: &CipherState, i: usize) -> Result<(CipherState, Vec<bool>), EngineError> {
    let mut st = s.clone();
    let mut bits = Vec::with_capacity(i);
    step_wide_in_place(p, &mut st, i, &mut bits)?;
    Ok((st, bits))
}
