use std::collections::HashMap;

use crate::boolfn::walsh_spectrum;
use crate::dyadic::Dyadic;
use crate::engine::{Assembly, GrainParams};
use crate::tapgen::check_cartesian;

use super::{check_window, index_sets, AnalysisError};

/// Sparse correlation spectrum: window mask → Walsh numerator.
pub(super) type Spectrum = HashMap<u64, i128>;

/// corr_{f1 ⊕ f2}(u) = Σ_v corr_f1(v)·corr_f2(u ⊕ v), on numerators.
pub(super) fn convolve(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut out = Spectrum::new();
    for (&u, &x) in a {
        for (&v, &y) in b {
            *out.entry(u ^ v).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Spectrum of f(proj(vars, window)): the Walsh values of f moved onto the
/// window bits in `vars`.
pub(super) fn scattered(w: &[i32], vars: &[usize]) -> Spectrum {
    let mut out = Spectrum::new();
    for (mask, &val) in w.iter().enumerate() {
        if val != 0 {
            let key = vars.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u64, |acc, (_, &v)| acc | 1 << v);
            out.insert(key, val as i128);
        }
    }
    out
}

fn h_vars(p: &GrainParams, r: usize, i: usize) -> Vec<usize> {
    let ns = p.p0.iter().map(|&x| r + i + x);
    let ls = p.q0.iter().map(|&y| i + y);
    let assembled: Vec<usize> = match p.assembly {
        Assembly::NFirst => ns.chain(ls).collect(),
        Assembly::LFirst => ls.chain(ns).collect(),
    };
    p.psi.iter().map(|&k| assembled[k]).collect()
}

fn g_vars(p: &GrainParams, r: usize, j: usize) -> Vec<usize> {
    p.s0.iter().map(|&x| r + x + j).collect()
}

/// corr_𝔤 over η masks (bit k is η_k) via the p1-fold convolution, as
/// exact rationals.
pub fn corr_g_sum(p: &GrainParams) -> Result<HashMap<u64, Dyadic>, AnalysisError> {
    let wg = walsh_spectrum(&p.g.truth_table()?)?;
    let spec = p
        .p1
        .iter()
        .map(|&j| scattered(wg.values(), &g_vars(p, 0, j)))
        .reduce(|a, b| convolve(&a, &b))
        .unwrap_or_else(|| Spectrum::from([(0, 1)]));
    let exp = (p.g.n * p.p1.len()) as u32;
    Ok(spec.into_iter().map(|(k, v)| (k, Dyadic::new(v, exp))).collect())
}

/// bias = Σ_β corr_𝔥(γ′, β)·corr_𝔤(β ⊕ δ), β over the η-window. corr_𝔥 is
/// the #T-fold convolution of the shifted copies of h; corr_𝔤 is a product
/// of g correlations when #(P1+S0) = #P1·#S0 and a convolution otherwise.
pub fn convolution_bias(p: &GrainParams, t: &[usize], gamma: &[bool]) -> Result<Dyadic, AnalysisError> {
    let sets = index_sets(p, t, gamma)?;
    let (r, s) = (sets.r, sets.s);
    check_window(r + s, 64)?;
    let wh = walsh_spectrum(&p.h.truth_table()?)?;
    let wg = walsh_spectrum(&p.g.truth_table()?)?;

    let corr_h = sets
        .t
        .iter()
        .map(|&i| scattered(wh.values(), &h_vars(p, r, i)))
        .reduce(|a, b| convolve(&a, &b))
        .expect("T is non-empty");
    let lam_mask = (1u64 << r) - 1;
    let gamma_p = sets.b.iter().fold(0u64, |acc, &k| acc | 1 << k);
    let delta = sets.c.iter().fold(0u64, |acc, &k| acc | 1 << (r + k));

    let g_parts: Vec<Vec<usize>> = p.p1.iter().map(|&j| g_vars(p, r, j)).collect();
    let corr_g: Box<dyn Fn(u64) -> i128> = if check_cartesian(&p.p1, &p.s0) {
        let f_mask = g_parts.iter().flatten().fold(0u64, |acc, &v| acc | 1 << v);
        let wg = wg.values().to_vec();
        Box::new(move |beta: u64| {
            if beta & !f_mask != 0 {
                return 0;
            }
            g_parts
                .iter()
                .map(|vars| {
                    let w = vars.iter().enumerate().fold(0usize, |acc, (k, &v)| acc | ((beta >> v & 1) as usize) << k);
                    wg[w] as i128
                })
                .product()
        })
    } else {
        let spec = g_parts
            .iter()
            .map(|vars| scattered(wg.values(), vars))
            .reduce(|a, b| convolve(&a, &b))
            .unwrap_or_else(|| Spectrum::from([(0, 1)]));
        Box::new(move |beta: u64| spec.get(&beta).copied().unwrap_or(0))
    };

    let mut num: i128 = 0;
    for (&key, &v) in &corr_h {
        if key & lam_mask == gamma_p {
            num += v * corr_g((key & !lam_mask) ^ delta);
        }
    }
    let exp = (p.h.n * sets.t.len() + p.g.n * p.p1.len()) as u32;
    Ok(Dyadic::new(num, exp))
}
