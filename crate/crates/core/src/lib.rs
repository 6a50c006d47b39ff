#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]
//! Generalized Stieltjes operators `S_{β,μ}` on `L^p(0,∞)`, their kernel
//! families, fractional Sobolev spaces and spectra.

pub mod error;
pub mod fractional;
pub mod kernels;
pub mod operators;
pub mod quad;
pub mod special_fn;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
