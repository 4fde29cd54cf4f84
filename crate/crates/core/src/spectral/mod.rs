//! Torus grids, spectral/physical transforms, Fourier multipliers, pointwise
//! products and Sobolev norms.

mod field;
mod grid;
mod symbol;

pub use field::{
    cubic_product, hr_norm, quadratic_product, to_physical, to_spectral, SpectralField,
};
pub(crate) use field::{from_product_values, product_values};
pub use grid::{make_grid, Grid};
pub use symbol::{
    apply_symbol, lc_value, sym_c_over_nabla, sym_cnabla, sym_cnabla_inv, sym_exp_i, sym_lc,
    Multiplier, Symbol,
};
