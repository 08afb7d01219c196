//! Linear approximations b = <γ, λ-window> ⊕ (xor of z_{t+i}, i in T):
//! window sizing, index sets, the zero-bias condition, ε bounds and three
//! ways to get the bias on toy instances.

mod conv;
mod empirical;
mod exact;

use std::collections::BTreeSet;
use std::fmt;

use crate::boolfn::{spectral_profile, BoolFnError};
use crate::dyadic::Dyadic;
use crate::engine::GrainParams;
use crate::funlib::{mm_h_part, mm_walsh, Family, FunctionBundle, FunlibError};
use crate::tapgen::check_cartesian;

pub use conv::{convolution_bias, corr_g_sum};
pub use empirical::{empirical_bias, EmpiricalBias, MIN_SAMPLES};
pub use exact::exact_model_bias;

/// Limit on the number of enumerated window bits in the exact model.
pub const MAX_WINDOW: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("T must be non-empty")]
    EmptyT,
    #[error("gamma has {got} bits, the window has r = {expected}")]
    GammaLength { expected: usize, got: usize },
    #[error("window of {size} bits exceeds the limit of {max}")]
    WindowTooLarge { size: usize, max: usize },
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    Samples(u64),
    #[error("toy simulation needs registers of at most 64 bits")]
    RegisterTooLarge,
    #[error(transparent)]
    BoolFn(#[from] BoolFnError),
    #[error(transparent)]
    Funlib(#[from] FunlibError),
}

fn t_set(t: &[usize]) -> Result<BTreeSet<usize>, AnalysisError> {
    let s: BTreeSet<usize> = t.iter().copied().collect();
    if s.is_empty() {
        return Err(AnalysisError::EmptyT);
    }
    Ok(s)
}

/// S1′ = T △ (S1 ∪ {κ1}).
pub fn s1_prime(p: &GrainParams, t: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s1: BTreeSet<usize> = p.s1.iter().copied().collect();
    s1.insert(p.kappa1);
    s1.symmetric_difference(t).copied().collect()
}

fn max_sum(a: &[usize], b: impl IntoIterator<Item = usize> + Clone) -> Option<usize> {
    a.iter().flat_map(|&x| b.clone().into_iter().map(move |y| x + y)).max()
}

/// r = 1 + max(max(Q1+T), max P1, max(Q0+T));
/// s = 1 + max(max(P1+S0), max(P1+S1′), max(P0+T)).
pub fn window_bounds(p: &GrainParams, t: &[usize]) -> Result<(usize, usize), AnalysisError> {
    let t = t_set(t)?;
    let r = [max_sum(&p.q1, t.iter().copied()), p.p1.iter().max().copied(), max_sum(&p.q0, t.iter().copied())]
        .into_iter()
        .flatten()
        .max()
        .map_or(0, |m| m + 1);
    let s1p = s1_prime(p, &t);
    let s = [max_sum(&p.p1, p.s0.iter().copied()), max_sum(&p.p1, s1p.iter().copied()), max_sum(&p.p0, t.iter().copied())]
        .into_iter()
        .flatten()
        .max()
        .map_or(0, |m| m + 1);
    Ok((r, s))
}

/// Toggles each pairwise sum: repeated sums cancel, as they do in the XOR.
fn parity_sum(a: impl IntoIterator<Item = usize>, b: &[usize]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for x in a {
        for &y in b {
            if !out.remove(&(x + y)) {
                out.insert(x + y);
            }
        }
    }
    out
}

fn plain_sum(a: impl IntoIterator<Item = usize>, b: &[usize]) -> BTreeSet<usize> {
    a.into_iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

fn sym_diff(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.symmetric_difference(b).copied().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub t: BTreeSet<usize>,
    pub r: usize,
    pub s: usize,
    pub s1_prime: BTreeSet<usize>,
    /// λ positions entering linearly; γ′ is its indicator.
    pub b: BTreeSet<usize>,
    /// η positions entering linearly; the η mask is its indicator.
    pub c: BTreeSet<usize>,
    pub d: BTreeSet<usize>,
    pub d_parts: Vec<(usize, BTreeSet<usize>)>,
    pub e: BTreeSet<usize>,
    pub e_parts: Vec<(usize, BTreeSet<usize>)>,
    pub f: BTreeSet<usize>,
    pub f_parts: Vec<(usize, BTreeSet<usize>)>,
}

impl IndexSets {
    pub fn gamma_prime(&self) -> Vec<bool> {
        (0..self.r).map(|i| self.b.contains(&i)).collect()
    }

    pub fn delta_mask(&self) -> Vec<bool> {
        (0..self.s).map(|i| self.c.contains(&i)).collect()
    }

    /// B ⊆ D and C ⊆ E ∪ F.
    pub fn necessary_condition(&self) -> bool {
        self.b.is_subset(&self.d) && self.c.iter().all(|x| self.e.contains(x) || self.f.contains(x))
    }
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl fmt::Display for IndexSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "T: {}", fmt_set(&self.t))?;
        writeln!(f, "r: {}", self.r)?;
        writeln!(f, "s: {}", self.s)?;
        writeln!(f, "S1': {}", fmt_set(&self.s1_prime))?;
        writeln!(f, "B: {}", fmt_set(&self.b))?;
        writeln!(f, "C: {}", fmt_set(&self.c))?;
        writeln!(f, "D: {}", fmt_set(&self.d))?;
        writeln!(f, "E: {}", fmt_set(&self.e))?;
        writeln!(f, "F: {} ({} elements)", fmt_set(&self.f), self.f.len())?;
        write!(f, "necessary condition: {}", if self.necessary_condition() { "holds" } else { "fails" })
    }
}

/// B = (T+Q1) △ P1 △ supp(γ), C = P1 + S1′, D = Q0+T, E = P0+T, F = S0+P1.
/// B and C count repeated sums mod 2.
pub fn index_sets(p: &GrainParams, t: &[usize], gamma: &[bool]) -> Result<IndexSets, AnalysisError> {
    let (r, s) = window_bounds(p, t)?;
    if gamma.len() != r {
        return Err(AnalysisError::GammaLength { expected: r, got: gamma.len() });
    }
    let t = t_set(t)?;
    let s1p = s1_prime(p, &t);
    let supp: BTreeSet<usize> = gamma.iter().enumerate().filter(|(_, &g)| g).map(|(i, _)| i).collect();
    let p1: BTreeSet<usize> = p.p1.iter().copied().collect();
    let b = sym_diff(&sym_diff(&parity_sum(t.iter().copied(), &p.q1), &p1), &supp);
    let c = parity_sum(p.p1.iter().copied(), &s1p.iter().copied().collect::<Vec<_>>());
    let d_parts: Vec<_> = t.iter().map(|&i| (i, plain_sum([i], &p.q0))).collect();
    let e_parts: Vec<_> = t.iter().map(|&i| (i, plain_sum([i], &p.p0))).collect();
    let f_parts: Vec<_> = p.p1.iter().map(|&j| (j, plain_sum([j], &p.s0))).collect();
    let union = |parts: &[(usize, BTreeSet<usize>)]| parts.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    Ok(IndexSets {
        r,
        s,
        s1_prime: s1p,
        b,
        c,
        d: union(&d_parts),
        e: union(&e_parts),
        f: union(&f_parts),
        d_parts,
        e_parts,
        f_parts,
        t,
    })
}

/// False means the bias is exactly zero.
pub fn necessary_condition(p: &GrainParams, t: &[usize], gamma: &[bool]) -> Result<bool, AnalysisError> {
    Ok(index_sets(p, t, gamma)?.necessary_condition())
}

/// LB(f) = max|W_f| / 2^n. Full spectrum up to 24 variables; beyond that
/// only the bent paired families, whose spectrum is ±2^k everywhere.
pub fn linear_bias(f: &FunctionBundle) -> Result<Dyadic, AnalysisError> {
    if let Ok(tt) = f.truth_table() {
        return Ok(spectral_profile(&tt)?.lb);
    }
    match (f.family, f.k) {
        (Family::G2k | Family::H2k, Some(k)) => {
            let hp = mm_h_part(f.family, k)?;
            let w = mm_walsh(&hp, 0, 0).unsigned_abs();
            Ok(Dyadic::new(w as i128, f.n as u32))
        }
        _ => Err(BoolFnError::TooManyVars { n: f.n, max: crate::boolfn::MAX_TABLE_VARS }.into()),
    }
}

#[derive(Clone, Debug)]
pub struct EpsilonBounds {
    pub t_card: u32,
    pub lb_h: Dyadic,
    pub lb_g: Dyadic,
    /// LB(h)^t
    pub eps_h: Dyadic,
    /// LB(g)^p1, only meaningful when #(P1+S0) = #P1·#S0.
    pub eps_g: Option<Dyadic>,
}

impl fmt::Display for EpsilonBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LB(h): {}", self.lb_h.fmt_log2())?;
        writeln!(f, "LB(g): {}", self.lb_g.fmt_log2())?;
        writeln!(f, "eps_h (t = {}): {}", self.t_card, self.eps_h.fmt_log2())?;
        match self.eps_g {
            Some(e) => write!(f, "eps_g: {}", e.fmt_log2()),
            None => write!(f, "eps_g: n/a (#(P1+S0) < #P1*#S0)"),
        }
    }
}

pub fn epsilon_bounds(p: &GrainParams, t_card: u32) -> Result<EpsilonBounds, AnalysisError> {
    if t_card == 0 {
        return Err(AnalysisError::EmptyT);
    }
    let lb_h = linear_bias(&p.h)?;
    let lb_g = linear_bias(&p.g)?;
    let eps_g = check_cartesian(&p.p1, &p.s0).then(|| lb_g.pow(p.p1.len() as u32));
    Ok(EpsilonBounds { t_card, lb_h, lb_g, eps_h: lb_h.pow(t_card), eps_g })
}

/// Window-bit layout shared by the exact and convolution routines: λ_k is
/// bit k, η_k is bit r + k.
pub(crate) fn check_window(size: usize, max: usize) -> Result<(), AnalysisError> {
    if size > max {
        return Err(AnalysisError::WindowTooLarge { size, max });
    }
    Ok(())
}

pub fn gamma_from_support(r: usize, support: &[usize]) -> Vec<bool> {
    (0..r).map(|i| support.contains(&i)).collect()
}
