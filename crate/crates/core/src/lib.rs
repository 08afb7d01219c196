//! Abstract Grain-family stream ciphers with the Boolean-function and
//! linear-approximation tooling around them.

pub mod boolfn;
pub mod dyadic;

pub use dyadic::Dyadic;
pub mod funlib;
pub mod gf2poly;
pub mod engine;
pub mod tapgen;
pub mod instances;
pub mod analysis;
