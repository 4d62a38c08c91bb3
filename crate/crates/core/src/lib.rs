//! Exact-amplitude simulation of complete concatenated-GHZ (C-GHZ) state
//! analysis with atoms in low-Q cavities acting as photonic Faraday-rotation
//! parity checkers.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation over value types; file formats, the command line and
//! multi-threaded trial runners live in the companion `cghz` crate.
//!
//! Module map:
//!
//! * [`qstate`]: dense state vectors over labeled photon/atom registers.
//! * [`cavity`]: reflection coefficients and Faraday gate synthesis.
//! * [`states`]: Bell, GHZ and C-GHZ constructors plus the label algebra.
//! * [`protocol`]: the m-reduction, parity step, sign step and full analyzer.
//! * [`noise`]: detector-loss and detuning models.
//! * [`rng`]: the seeded generator contract shared by everything stochastic.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cavity;
mod error;
pub mod noise;
pub mod protocol;
pub mod qstate;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
