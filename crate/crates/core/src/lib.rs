//! Exact Riemann solver for the Brio system and construction of its unique
//! admissible δ-type solution.
//!
//! The solver works in energy–velocity variables `(u, q)`, `q = (u² + v²)/2`,
//! where the system is strictly hyperbolic and genuinely nonlinear, builds the
//! Lax-admissible wave fan there, and maps it back to `(u, v)`. Every
//! transformed shock becomes a δ-shock of the `v`-equation whose strength
//! grows linearly at the Rankine–Hugoniot deficit rate.
//!
//! Modules:
//! - [`state`]: states, fluxes, eigenstructure.
//! - [`wave_curves`]: shock and rarefaction curves, composite 1-/2-curves.
//! - [`riemann`]: middle state, region classification, wave fans.
//! - [`delta`]: δ-shock constructions in the original variables.
//! - [`verify`]: weak-form residuals, finite-volume cross-check, property suite.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod delta;
pub mod error;
pub mod riemann;
pub mod roots;
pub mod state;
pub mod verify;
pub mod wave_curves;

pub use error::{Error, Result};
pub use state::{BrioState, Family, RiemannData, TransState};
