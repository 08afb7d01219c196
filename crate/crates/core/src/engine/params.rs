use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::funlib::{Evaluator, FunctionBundle};

use super::EngineError;

/// Order in which the P0 and Q0 tap values are concatenated before ψ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assembly {
    /// (proj(Q0,L), proj(P0,N)), as in Grain v1 and Grain-128a.
    LFirst,
    /// (proj(P0,N), proj(Q0,L)).
    NFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitVariant {
    Init1,
    Init2,
    InitG,
}

impl fmt::Display for InitVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitVariant::Init1 => "init1",
            InitVariant::Init2 => "init2",
            InitVariant::InitG => "initG",
        })
    }
}

impl InitVariant {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "init1" => Some(InitVariant::Init1),
            "init2" => Some(InitVariant::Init2),
            "initg" => Some(InitVariant::InitG),
            _ => None,
        }
    }
}

/// Plain description of one cipher in the family. Nothing here is checked;
/// `GrainParams::new` and `validate_params` do that.
#[derive(Clone, Debug)]
pub struct ParamSpec {
    pub name: String,
    pub kappa: usize,
    pub v: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    /// Exponents of the feedback polynomial with nonzero coefficient,
    /// including κ2 and 0.
    pub tau: Vec<usize>,
    pub a: Vec<usize>,
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub q0: Vec<usize>,
    pub q1: Vec<usize>,
    pub g: Arc<FunctionBundle>,
    pub h: Arc<FunctionBundle>,
    /// `psi[j]` is the input position that lands in output position j.
    pub psi: Vec<usize>,
    pub assembly: Assembly,
    pub delta: usize,
    pub pad: Vec<bool>,
    pub init: InitVariant,
    /// Keystream limit per (K, IV) as log2 of the bit count, if any.
    pub max_keystream_log2: Option<u32>,
    /// Deviations from the published listing, one line each.
    pub errata: Vec<String>,
    /// Published before the tap conditions existed; validated in legacy mode.
    pub legacy: bool,
}

/// A = (0) ∪ (κ2 − i : c_i = 1, 0 < i < κ2), ascending.
pub fn taps_from_tau(kappa2: usize, tau: &[usize]) -> Vec<usize> {
    let mut a: BTreeSet<usize> = tau.iter().filter(|&&e| e > 0 && e < kappa2).map(|&e| kappa2 - e).collect();
    a.insert(0);
    a.into_iter().collect()
}

/// The balanced string (10)^c.
pub fn balanced_pad(len: usize) -> Vec<bool> {
    (0..len).map(|i| i % 2 == 0).collect()
}

/// ψ for the new instances on N-first input (a1..a_p0, b1..b_q0):
/// (b1, a1, b2, a2, b3, a3, a4..a_p0, b4..b_q0).
pub fn interleave_psi(p0: usize, q0: usize) -> Vec<usize> {
    let mut pi = Vec::with_capacity(p0 + q0);
    for i in 0..3 {
        if i < q0 {
            pi.push(p0 + i);
        }
        if i < p0 {
            pi.push(i);
        }
    }
    pi.extend(3.min(p0)..p0);
    pi.extend(p0 + 3.min(q0)..p0 + q0);
    pi
}

impl ParamSpec {
    pub fn state_bits(&self) -> usize {
        self.kappa1 + self.kappa2
    }

    pub fn pad_len(&self) -> Option<usize> {
        self.state_bits().checked_sub(self.kappa + self.v)
    }
}

/// Checked parameters with ready evaluators for g and h.
#[derive(Clone, Debug)]
pub struct GrainParams {
    spec: ParamSpec,
    pub(crate) g_eval: Arc<Evaluator>,
    pub(crate) h_eval: Arc<Evaluator>,
    /// Register tap feeding each h input after ψ, in input order x1, x2, ...
    pub(crate) h_taps: Vec<Tap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tap {
    N(usize),
    L(usize),
}

impl Deref for GrainParams {
    type Target = ParamSpec;
    fn deref(&self) -> &ParamSpec {
        &self.spec
    }
}

impl GrainParams {
    /// Rejects structurally impossible parameters. The tap conditions are
    /// not enforced here; see `validate_params`.
    pub fn new(spec: ParamSpec) -> Result<Self, EngineError> {
        let problems = structural_problems(&spec);
        if !problems.is_empty() {
            return Err(EngineError::Structure(problems.join("; ")));
        }
        let g_eval = Arc::new(spec.g.evaluator());
        let h_eval = Arc::new(spec.h.evaluator());
        let p_taps = spec.p0.iter().map(|&i| Tap::N(i));
        let q_taps = spec.q0.iter().map(|&i| Tap::L(i));
        let assembled: Vec<Tap> = match spec.assembly {
            Assembly::NFirst => p_taps.chain(q_taps).collect(),
            Assembly::LFirst => q_taps.chain(p_taps).collect(),
        };
        let h_taps = spec.psi.iter().map(|&j| assembled[j]).collect();
        Ok(GrainParams { spec, g_eval, h_eval, h_taps })
    }

    pub fn spec(&self) -> &ParamSpec {
        &self.spec
    }

    pub fn into_spec(self) -> ParamSpec {
        self.spec
    }

    /// 0 ∈ S1, 0 ∉ S0 and 0 ∈ A: η0 and λ0 enter the feedback linearly.
    pub fn ns_invertible(&self) -> bool {
        self.s1.iter().filter(|&&i| i == 0).count() == 1 && !self.s0.contains(&0) && self.a.iter().filter(|&&i| i == 0).count() == 1
    }

    /// Additionally the output bit must not read η0 or λ0.
    pub fn nsi_invertible(&self) -> bool {
        self.ns_invertible() && ![&self.p0, &self.p1, &self.q0, &self.q1].iter().any(|l| l.contains(&0))
    }
}

pub(crate) fn structural_problems(p: &ParamSpec) -> Vec<String> {
    let mut out = Vec::new();
    if p.kappa1 == 0 || p.kappa2 == 0 {
        out.push("empty register".into());
        return out;
    }
    if p.kappa1 < p.kappa {
        out.push(format!("kappa1 {} < kappa {}", p.kappa1, p.kappa));
    }
    match p.pad_len() {
        None => out.push(format!("kappa + v = {} exceeds state size {}", p.kappa + p.v, p.state_bits())),
        Some(c) if c != p.pad.len() => out.push(format!("pad length {} but state leaves {}", p.pad.len(), c)),
        _ => {}
    }
    for (name, list, bound) in [
        ("S0", &p.s0, p.kappa1),
        ("S1", &p.s1, p.kappa1),
        ("P0", &p.p0, p.kappa1),
        ("P1", &p.p1, p.kappa1),
        ("A", &p.a, p.kappa2),
        ("Q0", &p.q0, p.kappa2),
        ("Q1", &p.q1, p.kappa2),
    ] {
        if let Some(&bad) = list.iter().find(|&&i| i >= bound) {
            out.push(format!("{name} index {bad} outside register of {bound} bits"));
        }
    }
    if p.tau.iter().max() != Some(&p.kappa2) || !p.tau.contains(&0) {
        out.push(format!("tau must have degree {} and a constant term", p.kappa2));
    }
    if p.g.n != p.s0.len() {
        out.push(format!("g takes {} inputs but S0 has {}", p.g.n, p.s0.len()));
    }
    let hn = p.p0.len() + p.q0.len();
    if p.h.n != hn {
        out.push(format!("h takes {} inputs but P0 and Q0 supply {}", p.h.n, hn));
    }
    let mut seen = vec![false; hn];
    let perm_ok = p.psi.len() == hn
        && p.psi.iter().all(|&j| j < hn && !std::mem::replace(&mut seen[j], true));
    if !perm_ok {
        out.push(format!("psi is not a permutation of {hn} positions"));
    }
    if p.delta == 0 {
        out.push("delta must be positive".into());
    }
    out
}
