//! Semiclassical tunneling in the quartic double well at finite Euclidean
//! size.
//!
//! The pipeline runs bottom-up:
//!
//! * [`elliptic`]: `K`, `F`, and `sn/cn/dn`.
//! * [`model`]: the potential and its derivatives.
//! * [`background`]: the kink and the finite-size elliptic instanton, and the
//!   solver that maps a size `L` to the integration constant `E`.
//! * [`action`]: classical action and zero-mode norm.
//! * [`fluctuation`]: stability operator, its spectrum, and the
//!   zero-mode-regularized determinant ratio (grid spectrum and
//!   Gelfand–Yaglom shooting).
//! * [`propagator`]: tunneling frequencies and amplitudes.
//! * [`cli`] and [`validation`]: the command-line front end.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod action;
pub mod background;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod fluctuation;
pub mod model;
pub mod numeric;
pub mod propagator;
pub mod validation;

pub use error::{Error, Result};
pub use model::DoubleWellParams;
