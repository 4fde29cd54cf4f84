//! Reference computations that share no code path with the integrators:
//! Gauss-Legendre quadrature, direct quadrature of the oscillatory
//! integral, a collocation solver for one exact step, and cached
//! fine-step reference trajectories.

mod duhamel;
mod osc;
mod quadrature;
mod reference;

pub use duhamel::{collocation_substeps, duhamel_reference_step};
pub use osc::{osc_integral_oracle, osc_nodes_rule};
pub use quadrature::gauss_legendre;
pub use reference::{
    certified_reference, default_cache_dir, reference_from_data, reference_trajectory, step_count,
    CertifiedReference,
};
