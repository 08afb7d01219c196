//! Named Boolean functions and constructions, each carried as ANF, circuit
//! and the property values published for it.

mod circuit;
pub mod constructions;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use circuit::{eval_circuit, gate_count, Circuit, CircuitBuilder, Gate, GateCount, Wire};

use crate::boolfn::{anf_to_tt, AnfPoly, BoolFnError, TruthTable, MAX_TABLE_VARS};
use crate::dyadic::Dyadic;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FunlibError {
    #[error("unknown function `{0}`")]
    UnknownName(String),
    #[error("{family} needs k >= {min}, got {k}")]
    KTooSmall { family: Family, k: usize, min: usize },
    #[error(transparent)]
    BoolFn(#[from] BoolFnError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    NamedLegacy,
    Named,
    H2k,
    H5p2k,
    G2k,
    Triangular,
    Custom,
}

impl Family {
    pub fn min_k(self) -> usize {
        match self {
            Family::H2k | Family::H5p2k => 1,
            Family::G2k => 6,
            Family::Triangular => 2,
            _ => 0,
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.to_ascii_lowercase().as_str() {
            "h2k" => Family::H2k,
            "h5p2k" => Family::H5p2k,
            "g2k" => Family::G2k,
            "triangular" | "e" => Family::Triangular,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::NamedLegacy => "named-legacy",
            Family::Named => "named",
            Family::H2k => "h2k",
            Family::H5p2k => "h5p2k",
            Family::G2k => "g2k",
            Family::Triangular => "triangular",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// A published value, possibly only a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Exact(i64),
    AtLeast(i64),
    AtMost(i64),
}

impl Claim {
    pub fn admits(self, v: i64) -> bool {
        match self {
            Claim::Exact(c) => v == c,
            Claim::AtLeast(c) => v >= c,
            Claim::AtMost(c) => v <= c,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Exact(v) => write!(f, "{v}"),
            Claim::AtLeast(v) => write!(f, ">= {v}"),
            Claim::AtMost(v) => write!(f, "<= {v}"),
        }
    }
}

/// Property values as published, with where they come from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Claimed {
    pub degree: Option<Claim>,
    pub resiliency: Option<Claim>,
    pub nl: Option<Claim>,
    pub ai: Option<Claim>,
    pub gates: Option<GateCount>,
    pub source: &'static str,
}

impl Claimed {
    /// Linear bias implied by an exact nonlinearity claim: (2^n − 2·nl)/2^n.
    pub fn lb(&self, n: usize) -> Option<Dyadic> {
        match self.nl? {
            Claim::Exact(nl) => Some(Dyadic::new((1i128 << n) - 2 * nl as i128, n as u32)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FunctionBundle {
    pub name: String,
    pub n: usize,
    pub anf: AnfPoly,
    pub circuit: Circuit,
    pub claimed: Claimed,
    pub family: Family,
    /// Construction parameter for family members.
    pub k: Option<usize>,
}

impl FunctionBundle {
    /// Full table from the ANF (n ≤ 24).
    pub fn truth_table(&self) -> Result<TruthTable, BoolFnError> {
        anf_to_tt(&self.anf)
    }

    /// Full table from the circuit, 64 inputs per pass (n ≤ 24).
    pub fn circuit_table(&self) -> Result<TruthTable, BoolFnError> {
        circuit_table(&self.circuit)
    }

    pub fn gate_count(&self) -> GateCount {
        gate_count(&self.circuit)
    }

    /// Checks ANF against circuit: exhaustive up to 20 variables, sampled beyond.
    pub fn check_consistency(&self) -> Result<(), u64> {
        if self.n <= 20 {
            let a = self.truth_table().map_err(|_| 0u64)?;
            let c = self.circuit_table().map_err(|_| 0u64)?;
            if a == c {
                return Ok(());
            }
            let bad = a.xor(&c).expect("same n").support().next().unwrap_or(0);
            return Err(bad);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x0067_7261_696e);
        let mask = if self.n >= 64 { !0 } else { (1u64 << self.n) - 1 };
        for _ in 0..100_000 {
            let x = rng.gen::<u64>() & mask;
            if self.anf.eval(x) != self.circuit.eval(x) {
                return Err(x);
            }
        }
        Ok(())
    }

    /// Fast evaluator for use in the cipher engine.
    pub fn evaluator(&self) -> Evaluator {
        if self.n <= MAX_TABLE_VARS {
            Evaluator::Table(self.truth_table().expect("n within table range"))
        } else {
            Evaluator::Circuit(self.circuit.clone())
        }
    }
}

/// Table lookup for small functions, circuit interpretation beyond that.
#[derive(Clone, Debug)]
pub enum Evaluator {
    Table(TruthTable),
    Circuit(Circuit),
}

impl Evaluator {
    pub fn eval(&self, x: u64) -> bool {
        match self {
            Evaluator::Table(t) => t.get(x),
            Evaluator::Circuit(c) => c.eval(x),
        }
    }
}

pub fn circuit_table(c: &Circuit) -> Result<TruthTable, BoolFnError> {
    const PAT: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let n = c.n();
    let mut t = TruthTable::zero(n)?;
    let mut scratch = Vec::new();
    let mut inputs = vec![0u64; n];
    let words = t.words().len();
    let mut out = Vec::with_capacity(words);
    for j in 0..words {
        for (i, w) in inputs.iter_mut().enumerate() {
            *w = if i < 6 { PAT[i] } else if (j >> (i - 6)) & 1 == 1 { !0 } else { 0 };
        }
        out.push(c.eval_sliced(&inputs, &mut scratch));
    }
    t = TruthTable::from_words(n, out)?;
    Ok(t)
}

/// W(u, v) of ⟨U, V⟩ ⊕ h(U) from the closed form 2^k·(−1)^(h(v) ⊕ ⟨u, v⟩),
/// with `u` the mask on U and `v` the mask on V.
pub fn mm_walsh(h_part: &TruthTable, u: u64, v: u64) -> i64 {
    let k = h_part.n();
    let sign = h_part.get(v) ^ ((u & v).count_ones() & 1 == 1);
    if sign {
        -(1i64 << k)
    } else {
        1i64 << k
    }
}

/// The U-only part h of an MM member of a paired family.
pub fn mm_h_part(family: Family, k: usize) -> Result<TruthTable, FunlibError> {
    match family {
        Family::G2k => Ok(anf_to_tt(&constructions::triangular(k).0)?),
        Family::H2k => Ok(TruthTable::from_fn(k, |x| x == (1u64 << k) - 1)?),
        _ => Err(FunlibError::UnknownName(format!("{family} is not a paired MM family"))),
    }
}

/// Names accepted by [`build_named`].
pub const REGISTRY: &[&str] = &[
    "h5", "h7", "h10", "h15", "h19", "g10", "f10", "g24", "g30", "g36", "e12", "e15", "e18", "grainv1_g", "grainv1_h",
    "grain128a_g", "grain128a_h",
];

const TABLE_GATES: &str = "published property and gate-count tables";

fn claimed(deg: i64, res: i64, nl: i64, ai: Claim, gates: Option<GateCount>, source: &'static str) -> Claimed {
    Claimed {
        degree: Some(Claim::Exact(deg)),
        resiliency: Some(Claim::Exact(res)),
        nl: Some(Claim::Exact(nl)),
        ai: Some(ai),
        gates,
        source,
    }
}

/// Gate tally stated for h_{5+2k}: (7+k) XOR and (2k+2) AND.
pub fn h5p2k_formula_gates(k: usize) -> GateCount {
    GateCount::new(0, 7 + k, 2 * k + 2)
}

fn family_claims(family: Family, k: usize) -> Claimed {
    let (k1, k2) = constructions::triangular_params(k);
    match family {
        Family::H2k => Claimed {
            degree: Some(Claim::Exact(k as i64)),
            resiliency: Some(Claim::Exact(-1)),
            nl: Some(Claim::Exact((1i64 << (2 * k - 1)) - (1i64 << (k - 1)))),
            ai: None,
            gates: Some(GateCount::new(0, k, 2 * k - 2)),
            source: "bent family nonlinearity and gate formula",
        },
        Family::H5p2k => {
            let n = 5 + 2 * k;
            Claimed {
                degree: Some(Claim::Exact(3.max(k) as i64)),
                resiliency: Some(Claim::Exact(1)),
                nl: Some(Claim::Exact((1i64 << (n - 1)) - (1i64 << ((n - 1) / 2)))),
                ai: None,
                gates: Some(h5p2k_formula_gates(k)),
                source: "direct-sum family formula",
            }
        }
        Family::G2k => Claimed {
            degree: Some(Claim::Exact((k + k1 - k2) as i64)),
            resiliency: Some(Claim::Exact(-1)),
            nl: Some(Claim::Exact((1i64 << (2 * k - 1)) - (1i64 << (k - 1)))),
            ai: Some(Claim::AtLeast(k1 as i64)),
            gates: None,
            source: "bent family formula with triangular immunity bound",
        },
        Family::Triangular => Claimed {
            degree: Some(Claim::Exact((k + k1 - k2) as i64)),
            resiliency: None,
            nl: None,
            ai: Some(Claim::AtLeast(k1 as i64)),
            gates: Some(GateCount::new(0, k1 - 1, k - k2 + k1 * (k1 - 1) / 2)),
            source: "triangular construction",
        },
        _ => Claimed::default(),
    }
}

pub fn build_family(family: Family, k: usize) -> Result<FunctionBundle, FunlibError> {
    let min = family.min_k();
    if !matches!(family, Family::H2k | Family::H5p2k | Family::G2k | Family::Triangular) {
        return Err(FunlibError::UnknownName(family.to_string()));
    }
    if k < min {
        return Err(FunlibError::KTooSmall { family, k, min });
    }
    let (anf, circuit, name) = match family {
        Family::H2k => {
            let (a, c) = constructions::h2k(k);
            (a, c, format!("h{}", 2 * k))
        }
        Family::H5p2k => {
            let (a, c) = constructions::h5p2k(k);
            (a, c, format!("h{}", 5 + 2 * k))
        }
        Family::G2k => {
            let (a, c) = constructions::g2k(k);
            (a, c, format!("g{}", 2 * k))
        }
        _ => {
            let (a, c) = constructions::triangular(k);
            (a, c, format!("e{k}"))
        }
    };
    Ok(FunctionBundle { name, n: anf.n(), anf, circuit, claimed: family_claims(family, k), family, k: Some(k) })
}

pub fn build_named(name: &str) -> Result<FunctionBundle, FunlibError> {
    let lower = name.to_ascii_lowercase();
    let gc = GateCount::new;
    let exact = Claim::Exact;
    let named = |anf: AnfPoly, circuit: Circuit, family: Family, claimed: Claimed| FunctionBundle {
        name: lower.clone(),
        n: anf.n(),
        anf,
        circuit,
        claimed,
        family,
        k: None,
    };
    let with = |mut b: FunctionBundle, c: Claimed| {
        b.name = lower.clone();
        b.claimed = c;
        b
    };
    Ok(match lower.as_str() {
        "h5" => {
            let (a, c) = constructions::h5();
            named(a, c, Family::Named, claimed(3, 1, 12, exact(2), Some(gc(0, 7, 4)), "h5 proposition"))
        }
        "h7" => {
            let (a, c) = constructions::h7();
            named(a, c, Family::Named, claimed(4, 1, 56, exact(3), Some(gc(2, 9, 8)), TABLE_GATES))
        }
        "g10" => {
            let (a, c) = constructions::g10();
            named(a, c, Family::Named, claimed(7, -1, 492, exact(4), Some(gc(1, 6, 10)), TABLE_GATES))
        }
        "f10" => {
            let (a, c) = constructions::f10();
            named(a, c, Family::Named, claimed(8, -1, 494, exact(3), None, "f10 discussion"))
        }
        "grainv1_g" => {
            let (a, c) = constructions::grainv1_g();
            named(a, c, Family::NamedLegacy, claimed(6, -1, 430, exact(4), Some(gc(6, 12, 17)), TABLE_GATES))
        }
        "grainv1_h" => {
            let (a, c) = constructions::grainv1_h();
            named(a, c, Family::NamedLegacy, claimed(3, 1, 12, exact(2), Some(gc(1, 7, 6)), TABLE_GATES))
        }
        "grain128a_g" => {
            let (a, c) = constructions::grain128a_g();
            named(a, c, Family::NamedLegacy, claimed(4, -1, 8_356_352, Claim::AtMost(4), Some(gc(0, 9, 14)), TABLE_GATES))
        }
        "grain128a_h" => {
            let (a, c) = constructions::grain128a_h();
            named(a, c, Family::NamedLegacy, claimed(3, -1, 240, exact(3), Some(gc(0, 4, 6)), TABLE_GATES))
        }
        "h10" => with(build_family(Family::H2k, 5)?, claimed(5, -1, 496, exact(3), Some(gc(0, 5, 8)), TABLE_GATES)),
        "h15" => with(
            build_family(Family::H5p2k, 5)?,
            claimed(5, 1, (1 << 14) - (1 << 7), exact(4), Some(gc(0, 12, 13)), TABLE_GATES),
        ),
        "h19" => with(
            build_family(Family::H5p2k, 7)?,
            claimed(7, 1, (1 << 18) - (1 << 9), exact(4), Some(gc(0, 14, 17)), TABLE_GATES),
        ),
        "g24" => with(
            build_family(Family::G2k, 12)?,
            claimed(6, -1, (1 << 23) - (1 << 11), Claim::AtLeast(4), Some(gc(1, 14, 17)), TABLE_GATES),
        ),
        "g30" => with(
            build_family(Family::G2k, 15)?,
            claimed(5, -1, (1 << 29) - (1 << 14), Claim::AtLeast(5), Some(gc(1, 19, 21)), TABLE_GATES),
        ),
        "g36" => with(
            build_family(Family::G2k, 18)?,
            claimed(8, -1, (1 << 35) - (1 << 17), Claim::AtLeast(6), Some(gc(1, 22, 27)), TABLE_GATES),
        ),
        "e12" => build_family(Family::Triangular, 12)?,
        "e15" => build_family(Family::Triangular, 15)?,
        "e18" => build_family(Family::Triangular, 18)?,
        _ => return Err(FunlibError::UnknownName(name.to_string())),
    })
}

/// Selects a bundle by registry name or by family and k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    Named(String),
    Family { family: Family, k: usize },
}

pub fn build_function(spec: &FunctionSpec) -> Result<FunctionBundle, FunlibError> {
    match spec {
        FunctionSpec::Named(n) => build_named(n),
        FunctionSpec::Family { family, k } => build_family(*family, *k),
    }
}

/// Wraps an arbitrary ANF as a bundle; the circuit is a plain sum of products.
pub fn custom_bundle(name: &str, anf: AnfPoly) -> FunctionBundle {
    let mut b = CircuitBuilder::new(anf.n());
    let mut ws = Vec::new();
    for m in anf.monomials() {
        if m == 0 {
            ws.push(Wire::Const(true));
            continue;
        }
        let vars: Vec<usize> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect();
        ws.push(b.product(&vars));
    }
    let out = if ws.is_empty() { Wire::Const(false) } else { b.xor_all(&ws) };
    FunctionBundle {
        name: name.to_string(),
        n: anf.n(),
        anf,
        circuit: b.finish(out),
        claimed: Claimed { source: "custom", ..Claimed::default() },
        family: Family::Custom,
        k: None,
    }
}

/// Registry name, or a family member written `family:k` (e.g. `h2k:2`).
pub fn lookup(name: &str) -> Result<FunctionBundle, FunlibError> {
    if let Some((fam, k)) = name.split_once(':') {
        let family = Family::parse(fam.trim()).ok_or_else(|| FunlibError::UnknownName(name.to_string()))?;
        let k = k.trim().parse().map_err(|_| FunlibError::UnknownName(name.to_string()))?;
        return build_family(family, k);
    }
    build_named(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{degree, spectral_profile, walsh_spectrum};

    #[test]
    fn registry_is_total() {
        for name in REGISTRY {
            let b = build_named(name).unwrap();
            assert_eq!(b.name, *name);
            assert_eq!(b.check_consistency(), Ok(()), "{name}");
        }
        assert!(matches!(build_named("nosuch"), Err(FunlibError::UnknownName(_))));
    }

    #[test]
    fn family_minimums() {
        assert!(build_family(Family::G2k, 5).is_err());
        assert!(build_family(Family::Triangular, 1).is_err());
        assert!(build_family(Family::H2k, 0).is_err());
        assert!(build_family(Family::H2k, 1).is_ok());
    }

    #[test]
    fn h4_matches_formula() {
        let b = build_family(Family::H2k, 2).unwrap();
        assert_eq!(b.anf, AnfPoly::parse(4, "x1*x3 + x2*x4 + x1*x2").unwrap());
        assert_eq!(spectral_profile(&b.truth_table().unwrap()).unwrap().nl, 6);
    }

    #[test]
    fn small_bundles_match_claims() {
        for name in ["h5", "h7", "g10", "f10", "h10", "h15", "grainv1_g", "grainv1_h", "grain128a_h"] {
            let b = build_named(name).unwrap();
            let t = b.truth_table().unwrap();
            let p = spectral_profile(&t).unwrap();
            assert!(b.claimed.nl.unwrap().admits(p.nl as i64), "{name} nl {}", p.nl);
            assert!(b.claimed.resiliency.unwrap().admits(p.resiliency as i64), "{name}");
            assert!(b.claimed.degree.unwrap().admits(degree(&b.anf) as i64), "{name}");
            assert_eq!(b.claimed.lb(b.n), Some(p.lb), "{name}");
        }
    }

    #[test]
    fn mm_closed_form_small() {
        let h = mm_h_part(Family::G2k, 6).unwrap();
        let b = build_family(Family::G2k, 6).unwrap();
        let w = walsh_spectrum(&b.truth_table().unwrap()).unwrap();
        for u in 0..64u64 {
            for v in 0..64u64 {
                assert_eq!(w.at(u | v << 6) as i64, mm_walsh(&h, u, v));
            }
        }
        let e3 = anf_to_tt(&constructions::triangular(3).0).unwrap();
        assert_eq!(mm_walsh(&e3, 0, 0), 8);
    }

    #[test]
    fn custom_bundle_evaluates() {
        let a = AnfPoly::parse(3, "x1*x2 + x3 + 1").unwrap();
        let b = custom_bundle("t", a);
        assert_eq!(b.check_consistency(), Ok(()));
        let z = custom_bundle("z", AnfPoly::zero(2));
        assert!(!z.circuit.eval(3));
    }
}
