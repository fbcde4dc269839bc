//! Exact arithmetic for p-adic, real and adelic fractal strings.
//!
//! Lengths and multiplicities are kept as big rationals and integers; floating
//! point only appears where a transcendental value (a logarithm, a complex
//! power) is unavoidable.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod strings;
pub mod tube;
pub mod zeta;

pub use error::{Error, Result};
