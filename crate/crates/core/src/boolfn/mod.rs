//! Boolean functions: tables, ANF, Walsh spectra and algebraic immunity.

mod anf;
mod immunity;
mod table;
mod walsh;

pub use anf::{anf_to_tt, degree, tt_to_anf, AnfPoly};
pub use immunity::{
    algebraic_immunity, algebraic_immunity_with, default_ai_cap, find_annihilator, monomial_count, monomials_up_to,
    AiResult, DEFAULT_MEMORY_CEILING,
};
pub use table::TruthTable;
pub use walsh::{
    correlation_at, fwht_in_place, profile_of_spectrum, spectral_profile, walsh_at, walsh_spectrum, SpectralProfile,
    WalshSpectrum,
};

/// Largest variable count handled in full-table form.
pub const MAX_TABLE_VARS: usize = 24;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BoolFnError {
    #[error("{n} variables exceeds the table limit of {max}")]
    TooManyVars { n: usize, max: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable x{var} out of range for n = {n}")]
    VarOutOfRange { var: usize, n: usize },
    #[error("ANF parse error: {0}")]
    Parse(String),
    #[error("elimination matrix needs {bytes} bytes, ceiling is {ceiling}")]
    MemoryCeiling { bytes: usize, ceiling: usize },
}

/// f(x) ⊕ g(y) with x on the first `f.n()` variables and y on the next `g.n()`.
pub fn direct_sum(f: &TruthTable, g: &TruthTable) -> Result<TruthTable, BoolFnError> {
    let nf = f.n();
    let n = nf + g.n();
    if n > MAX_TABLE_VARS {
        return Err(BoolFnError::TooManyVars { n, max: MAX_TABLE_VARS });
    }
    let fmask = (1u64 << nf) - 1;
    TruthTable::from_fn(n, |x| f.get(x & fmask) ^ g.get(x >> nf))
}
