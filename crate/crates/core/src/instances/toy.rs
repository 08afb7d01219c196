use std::collections::BTreeSet;
use std::sync::Arc;

use crate::engine::{balanced_pad, interleave_psi, taps_from_tau, Assembly, GrainParams, InitVariant, ParamSpec};
use crate::funlib::lookup;
use crate::gf2poly::Gf2Poly;
use crate::tapgen::{generate_taps, TapRequest, XorShift64Star};

use super::InstanceError;

pub const MAX_TOY_BITS: usize = 24;
const TAU_TRIES: usize = 100_000;

/// Request for a downscaled instance. Function names go through
/// `funlib::lookup`; n0 and p0 + q0 follow from their arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToySpec {
    pub kappa: usize,
    pub v: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    pub g: String,
    pub h: String,
    pub n1: usize,
    pub p0: Option<usize>,
    pub p1: usize,
    pub q1: usize,
    /// Number of LFSR taps, i.e. terms of τ other than x^κ2.
    pub a: usize,
    pub delta: usize,
    pub init: InitVariant,
    pub seed: u64,
}

impl ToySpec {
    pub fn new(kappa: usize, v: usize, kappa1: usize, kappa2: usize, g: &str, h: &str, seed: u64) -> Self {
        ToySpec {
            kappa,
            v,
            kappa1,
            kappa2,
            g: g.to_string(),
            h: h.to_string(),
            n1: 2,
            p0: None,
            p1: 2,
            q1: 1,
            a: 4,
            delta: 2,
            init: InitVariant::InitG,
            seed,
        }
    }
}

/// Random primitive τ of degree κ2 whose taps all sit at most κ2 − δ.
fn find_tau(kappa2: usize, a: usize, delta: usize, rng: &mut XorShift64Star) -> Result<Vec<usize>, InstanceError> {
    let middle = a.saturating_sub(1);
    let lo = delta.max(1);
    let fail = InstanceError::NoPrimitive { degree: kappa2, tries: TAU_TRIES };
    if kappa2 <= lo || middle > kappa2 - lo {
        return Err(fail);
    }
    for _ in 0..TAU_TRIES {
        let mut exps = BTreeSet::new();
        while exps.len() < middle {
            exps.insert(lo + rng.below((kappa2 - lo) as u64) as usize);
        }
        let mut tau: Vec<usize> = std::iter::once(kappa2).chain(exps.into_iter().rev()).chain([0]).collect();
        tau.dedup();
        if Gf2Poly::from_exponents(&tau).is_primitive() {
            return Ok(tau);
        }
    }
    Err(fail)
}

/// Builds a toy instance: primitive τ, taps from `generate_taps`, N-first
/// assembly with the interleaving ψ and a balanced pad. Deterministic per seed.
pub fn make_toy(spec: &ToySpec) -> Result<GrainParams, InstanceError> {
    if [spec.kappa, spec.v, spec.kappa1, spec.kappa2].iter().any(|&x| x > MAX_TOY_BITS) {
        return Err(InstanceError::ToyTooLarge { max: MAX_TOY_BITS });
    }
    let g = Arc::new(lookup(&spec.g)?);
    let h = Arc::new(lookup(&spec.h)?);
    let p0 = spec.p0.unwrap_or(h.n / 2).min(h.n);
    let q0 = h.n - p0;
    let mut rng = XorShift64Star::new(spec.seed ^ 0x0074_6f79_5f74_6175);
    let tau = find_tau(spec.kappa2, spec.a, spec.delta, &mut rng)?;
    let a = taps_from_tau(spec.kappa2, &tau);
    let taps = generate_taps(&TapRequest {
        kappa1: spec.kappa1,
        kappa2: spec.kappa2,
        delta: spec.delta,
        n0: g.n,
        n1: spec.n1,
        p0,
        p1: spec.p1,
        q0,
        q1: spec.q1,
        a: a.clone(),
        seed: spec.seed,
    })?;
    let c = (spec.kappa1 + spec.kappa2).checked_sub(spec.kappa + spec.v).ok_or(InstanceError::Config {
        line: 0,
        msg: "kappa + v exceeds the state".into(),
    })?;
    let p = ParamSpec {
        name: format!("toy-{}-{}-s{}", spec.kappa1, spec.kappa2, spec.seed),
        kappa: spec.kappa,
        v: spec.v,
        kappa1: spec.kappa1,
        kappa2: spec.kappa2,
        tau,
        a,
        s0: taps.s0,
        s1: taps.s1,
        p0: taps.p0,
        p1: taps.p1,
        q0: taps.q0,
        q1: taps.q1,
        g,
        h,
        psi: interleave_psi(p0, q0),
        assembly: Assembly::NFirst,
        delta: spec.delta,
        pad: balanced_pad(c),
        init: spec.init,
        max_keystream_log2: Some(64),
        errata: vec![],
        legacy: false,
    };
    Ok(GrainParams::new(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::validate_params;

    #[test]
    fn toy_is_valid_deterministic_and_primitive() {
        let spec = ToySpec::new(16, 8, 16, 16, "h2k:2", "h5", 1);
        let p = make_toy(&spec).unwrap();
        let r = validate_params(&p, true);
        assert!(r.ok(), "{r}");
        let q = make_toy(&spec).unwrap();
        assert_eq!((&p.tau, &p.s1, &p.p0, &p.q0, &p.q1), (&q.tau, &q.s1, &q.p0, &q.q0, &q.q1));
        assert_eq!(Gf2Poly::from_exponents(&p.tau).order_of_x(), Some((1 << 16) - 1));
        let other = make_toy(&ToySpec { seed: 2, ..spec }).unwrap();
        assert!(other.tau != p.tau || other.q0 != p.q0 || other.p0 != p.p0);
    }

    #[test]
    fn toy_limits() {
        assert!(make_toy(&ToySpec::new(32, 8, 32, 32, "h2k:2", "h5", 1)).is_err());
        assert!(make_toy(&ToySpec::new(8, 4, 8, 8, "h2k:5", "h5", 1)).is_err());
    }
}
