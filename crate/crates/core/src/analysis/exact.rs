use std::collections::BTreeMap;

use crate::dyadic::Dyadic;
use crate::engine::{Assembly, GrainParams};

use super::{check_window, s1_prime, t_set, window_bounds, AnalysisError, MAX_WINDOW};

/// Bias of b over independent uniform window bits, by enumeration of the
/// expanded expression
///   <γ,λ> ⊕ ⊕_{i∈T,j∈Q1} λ_{i+j} ⊕ ⊕_{j∈P1} λ_j ⊕ ⊕_{i∈T} h(..at offset i..)
///   ⊕ ⊕_{j∈P1,i∈S1′} η_{i+j} ⊕ ⊕_{j∈P1} g(proj(S0+j, η)).
/// Window bits that occur nowhere cannot change b and are left out of the loop.
pub fn exact_model_bias(p: &GrainParams, t: &[usize], gamma: &[bool]) -> Result<Dyadic, AnalysisError> {
    let (r, _) = window_bounds(p, t)?;
    if gamma.len() != r {
        return Err(AnalysisError::GammaLength { expected: r, got: gamma.len() });
    }
    let t = t_set(t)?;
    let lam = |k: usize| k;
    let eta = |k: usize| r + k;

    let mut linear: Vec<usize> = gamma.iter().enumerate().filter(|(_, &g)| g).map(|(i, _)| lam(i)).collect();
    for &i in &t {
        linear.extend(p.q1.iter().map(|&j| lam(i + j)));
    }
    linear.extend(p.p1.iter().map(|&j| lam(j)));
    let s1p = s1_prime(p, &t);
    for &j in &p.p1 {
        linear.extend(s1p.iter().map(|&i| eta(i + j)));
    }

    let mut h_calls = Vec::new();
    for &i in &t {
        let ns = p.p0.iter().map(|&x| eta(i + x));
        let ls = p.q0.iter().map(|&y| lam(i + y));
        let assembled: Vec<usize> = match p.assembly {
            Assembly::NFirst => ns.chain(ls).collect(),
            Assembly::LFirst => ls.chain(ns).collect(),
        };
        h_calls.push(p.psi.iter().map(|&k| assembled[k]).collect::<Vec<_>>());
    }
    let g_calls: Vec<Vec<usize>> = p.p1.iter().map(|&j| p.s0.iter().map(|&x| eta(x + j)).collect()).collect();

    let mut dense: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in linear.iter().chain(h_calls.iter().flatten()).chain(g_calls.iter().flatten()) {
        let next = dense.len();
        dense.entry(v).or_insert(next);
    }
    let m = dense.len();
    check_window(m, MAX_WINDOW)?;
    let lin_mask = linear.iter().fold(0u64, |acc, v| acc ^ (1 << dense[v]));
    let remap = |calls: &[Vec<usize>]| -> Vec<Vec<u32>> {
        calls.iter().map(|c| c.iter().map(|v| dense[v] as u32).collect()).collect()
    };
    let h_calls = remap(&h_calls);
    let g_calls = remap(&g_calls);
    let h_tt = p.h.truth_table()?;
    let g_tt = p.g.truth_table()?;

    let gather = |x: u64, idx: &[u32]| idx.iter().enumerate().fold(0u64, |acc, (k, &b)| acc | ((x >> b) & 1) << k);
    let mut sum: i128 = 0;
    for x in 0..1u64 << m {
        let mut b = (x & lin_mask).count_ones() & 1 == 1;
        for c in &h_calls {
            b ^= h_tt.get(gather(x, c));
        }
        for c in &g_calls {
            b ^= g_tt.get(gather(x, c));
        }
        sum += if b { -1 } else { 1 };
    }
    Ok(Dyadic::new(sum, m as u32))
}
