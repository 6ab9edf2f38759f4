//! Exact exchangeable occupancy models.
//!
//! * [`comb`]: composition, ordered-label and label-vector spaces and the maps between them.
//! * [`eom`]: occupancy distributions, product-form models, label laws and sampling.
//! * [`transform`]: particle drop, cell erasure and partial-sum conditioning.
//! * [`process`]: finite-horizon a-mixed geometric counting processes.
//! * [`json`]: the canonical JSON documents used by the command-line tool.
//! * [`verify`]: exhaustive verification suites with machine-readable reports.

pub mod comb;
pub mod eom;
pub mod error;
pub mod json;
pub mod process;
pub mod rational;
pub mod sampling;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
