use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::TruthTable;
use crate::engine::{Assembly, GrainParams};

use super::{t_set, window_bounds, AnalysisError};

pub const MIN_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalBias {
    pub estimate: f64,
    pub samples: u64,
    /// Standard error for an unbiased ±1 variable, 1/√samples.
    pub sigma: f64,
}

/// Registers packed into u64 words; a stripped-down NS stepper for toys.
pub(crate) struct FastToy {
    k1: usize,
    k2: usize,
    a_mask: u64,
    s1_mask: u64,
    p1_mask: u64,
    q1_mask: u64,
    g_idx: Vec<usize>,
    /// h inputs in h variable order: (from N?, position).
    h_idx: Vec<(bool, usize)>,
    g_tt: TruthTable,
    h_tt: TruthTable,
}

fn mask_of(pos: &[usize]) -> u64 {
    pos.iter().fold(0, |m, &i| m | 1 << i)
}

fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

impl FastToy {
    pub(crate) fn new(p: &GrainParams) -> Result<Self, AnalysisError> {
        if p.kappa1 > 64 || p.kappa2 > 64 {
            return Err(AnalysisError::RegisterTooLarge);
        }
        let ns = p.p0.iter().map(|&x| (true, x));
        let ls = p.q0.iter().map(|&y| (false, y));
        let assembled: Vec<(bool, usize)> = match p.assembly {
            Assembly::NFirst => ns.chain(ls).collect(),
            Assembly::LFirst => ls.chain(ns).collect(),
        };
        Ok(FastToy {
            k1: p.kappa1,
            k2: p.kappa2,
            a_mask: mask_of(&p.a),
            s1_mask: mask_of(&p.s1),
            p1_mask: mask_of(&p.p1),
            q1_mask: mask_of(&p.q1),
            g_idx: p.s0.clone(),
            h_idx: p.psi.iter().map(|&k| assembled[k]).collect(),
            g_tt: p.g.truth_table()?,
            h_tt: p.h.truth_table()?,
        })
    }

    pub(crate) fn output(&self, n: u64, l: u64) -> bool {
        let hx = self.h_idx.iter().enumerate().fold(0u64, |acc, (k, &(from_n, i))| {
            acc | ((if from_n { n } else { l }) >> i & 1) << k
        });
        parity(n & self.p1_mask) ^ parity(l & self.q1_mask) ^ self.h_tt.get(hx)
    }

    /// One NS step.
    pub(crate) fn step(&self, n: u64, l: u64) -> (u64, u64) {
        let gx = self.g_idx.iter().enumerate().fold(0u64, |acc, (k, &i)| acc | (n >> i & 1) << k);
        let b = parity(n & self.s1_mask) ^ self.g_tt.get(gx) ^ (l & 1 == 1);
        let b2 = parity(l & self.a_mask);
        ((n >> 1) | (b as u64) << (self.k1 - 1), (l >> 1) | (b2 as u64) << (self.k2 - 1))
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1 << k) - 1
    }
}

/// Estimates E[(-1)^b] over uniformly random states, keystream produced by
/// NS steps from that state. Unlike the exact model, the window bits here
/// are the real register sequences and need not be independent.
pub fn empirical_bias(p: &GrainParams, t: &[usize], gamma: &[bool], samples: u64, seed: u64) -> Result<EmpiricalBias, AnalysisError> {
    if samples < MIN_SAMPLES {
        return Err(AnalysisError::Samples(samples));
    }
    let (r, _) = window_bounds(p, t)?;
    if gamma.len() != r {
        return Err(AnalysisError::GammaLength { expected: r, got: gamma.len() });
    }
    let t = t_set(t)?;
    let toy = FastToy::new(p)?;
    let t_max = *t.iter().next_back().expect("non-empty");
    let steps = (t_max + 1).max(r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum: i64 = 0;
    for _ in 0..samples {
        let mut n = rng.next_u64() & low_mask(p.kappa1);
        let mut l = rng.next_u64() & low_mask(p.kappa2);
        let mut b = false;
        for m in 0..steps {
            if gamma.get(m) == Some(&true) {
                b ^= l & 1 == 1;
            }
            if t.contains(&m) {
                b ^= toy.output(n, l);
            }
            (n, l) = toy.step(n, l);
        }
        sum += if b { -1 } else { 1 };
    }
    Ok(EmpiricalBias { estimate: sum as f64 / samples as f64, samples, sigma: 1.0 / (samples as f64).sqrt() })
}
