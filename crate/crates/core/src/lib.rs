//! 1D ideal-gas Euler solver laboratory.
//!
//! The crate bundles the classic Godunov-framework toolchain for 1D
//! hyperbolic conservation laws: an exact Riemann solver driven by a single
//! scalar root-solve, the 1962-style linearised approximate solver, a bank
//! of interface fluxes (Godunov, HLL, Lax-Friedrichs, Lax-Wendroff, second-
//! order ADER), Glimm's random choice method, a finite-volume driver, and a
//! shock-tube benchmark harness with error norms and convergence studies.

pub mod bench;
pub mod engine;
pub mod error;
pub mod euler;
pub mod riemann;
pub mod schemes;

pub use error::{Error, Result};
pub use euler::{ConservedState, FluxVector, GasModel, PrimitiveState};
pub use riemann::{RiemannFan, StarEstimate, Wave, WaveKind};
