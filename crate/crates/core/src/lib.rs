//! Uniformly accurate low-regularity integrators for the cubic Klein-Gordon
//! equation `c⁻²∂ₜₜz − Δz + c²z = −z³` on the torus, from the relativistic
//! regime to the nonlinear Schrödinger limit.
//!
//! The crate is organised bottom-up: [`spectral`] (grids, transforms,
//! multipliers), [`phi`] and [`phase`] (the scalar special functions),
//! [`model`] (twisted variable and initial data), [`integrators`] (the time
//! steppers), [`oracle`] (independent reference computations) and
//! [`harness`] (convergence studies and CSV output).

pub mod error;
pub mod harness;
pub mod integrators;
pub mod model;
pub mod oracle;
pub mod phase;
pub mod phi;
pub mod spectral;

pub use error::{KgError, Result};
