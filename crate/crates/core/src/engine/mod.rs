//! The abstract Grain machine: registers, update and output maps,
//! initialization variants, inverse steps and keystream generation.

mod bitreg;
mod hexbits;
mod init;
mod params;
mod state;
mod validate;

pub use bitreg::BitReg;
pub use hexbits::{bin_to_bits, bits_to_bin, bits_to_hex, hex_to_bits};
pub use init::{keystream, run_init, run_init_with_stats, InitStats, Keystream};
pub use params::{balanced_pad, interleave_psi, taps_from_tau, Assembly, GrainParams, InitVariant, ParamSpec};
pub use state::{
    component_bits, feedback, load_state, output_bit, step, step_in_place, step_inverse, step_inverse_in_place, step_wide,
    step_wide_in_place, CipherState, Components, StepMode,
};
pub use validate::{validate_params, Check, Status, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    Structure(String),
    #[error("{what} has {got} bits, expected {expected}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("{0} is not invertible for these taps")]
    NotInvertible(StepMode),
    #[error("wide step of {i} outside 1..={delta}")]
    WideRange { i: usize, delta: usize },
    #[error("taps exceed kappa - delta; wide stepping unavailable")]
    WideTaps,
    #[error("{nbits} keystream bits exceeds the limit of 2^{log2}")]
    OverLimit { nbits: u128, log2: u32 },
    #[error("bad bit string: {0}")]
    Hex(String),
}
