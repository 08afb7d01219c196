use super::params::{GrainParams, InitVariant};
use super::state::{load_state, output_bit, step_in_place, CipherState, StepMode};
use super::EngineError;

/// Step counts of one initialization run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InitStats {
    pub ns: u64,
    pub nsi: u64,
    pub nsig: u64,
    /// NSI steps followed by a key XOR (init2 only).
    pub hardened: u64,
}

fn run(p: &GrainParams, s: &mut CipherState, mode: StepMode, count: usize, stats: &mut InitStats) {
    for _ in 0..count {
        step_in_place(p, s, mode);
    }
    let c = count as u64;
    match mode {
        StepMode::Ns => stats.ns += c,
        StepMode::Nsi => stats.nsi += c,
        StepMode::Nsig => stats.nsig += c,
    }
}

pub fn run_init_with_stats(p: &GrainParams, key: &[bool], iv: &[bool]) -> Result<(CipherState, InitStats), EngineError> {
    let mut s = load_state(p, key, iv)?;
    let mut stats = InitStats::default();
    let m = p.kappa1.max(p.kappa2);
    match p.init {
        InitVariant::Init1 => run(p, &mut s, StepMode::Nsi, 2 * m, &mut stats),
        InitVariant::InitG => run(p, &mut s, StepMode::Nsig, 2 * m, &mut stats),
        InitVariant::Init2 => {
            run(p, &mut s, StepMode::Nsi, 5 * m / 2, &mut stats);
            let half = p.kappa / 2;
            for t in 0..half {
                step_in_place(p, &mut s, StepMode::Nsi);
                if key[t] {
                    s.n.flip(p.kappa1 - 1);
                }
                if key[t + half] {
                    s.l.flip(p.kappa2 - 1);
                }
                stats.nsi += 1;
                stats.hardened += 1;
            }
            run(p, &mut s, StepMode::Ns, m, &mut stats);
        }
    }
    s.t = 0;
    Ok((s, stats))
}

/// Loads K and IV and runs the initialization; the result has t = 0.
pub fn run_init(p: &GrainParams, key: &[bool], iv: &[bool]) -> Result<CipherState, EngineError> {
    run_init_with_stats(p, key, iv).map(|(s, _)| s)
}

/// Iterator over keystream bits: output OB, then clock NS.
pub struct Keystream<'a> {
    p: &'a GrainParams,
    s: CipherState,
}

impl<'a> Keystream<'a> {
    pub fn new(p: &'a GrainParams, s: CipherState) -> Self {
        Keystream { p, s }
    }

    pub fn state(&self) -> &CipherState {
        &self.s
    }
}

impl Iterator for Keystream<'_> {
    type Item = bool;
    fn next(&mut self) -> Option<bool> {
        let z = output_bit(self.p, &self.s);
        step_in_place(self.p, &mut self.s, StepMode::Ns);
        Some(z)
    }
}

/// First `nbits` keystream bits for (K, IV). Requests beyond the
/// instance's keystream limit are refused unless `allow_over_limit`.
pub fn keystream(p: &GrainParams, key: &[bool], iv: &[bool], nbits: u128, allow_over_limit: bool) -> Result<Vec<bool>, EngineError> {
    if let Some(lim) = p.max_keystream_log2 {
        if !allow_over_limit && nbits > 1u128 << lim {
            return Err(EngineError::OverLimit { nbits, log2: lim });
        }
    }
    let n = usize::try_from(nbits).map_err(|_| EngineError::OverLimit { nbits, log2: usize::BITS - 1 })?;
    let s = run_init(p, key, iv)?;
    Ok(Keystream::new(p, s).take(n).collect())
}
