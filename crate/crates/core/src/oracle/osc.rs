use num_complex::Complex64;

use super::quadrature::gauss_legendre;
use crate::error::{KgError, Result};
use crate::model::check_c;
use crate::phase::Angle;
use crate::spectral::{cubic_product, lc_value, Multiplier, SpectralField};

/// `max(64, ⌈4c²t⌉)`: at least four nodes per radian of the fastest phase.
pub fn osc_nodes_rule(c: f64, t: f64) -> usize {
    ((4.0 * c * c * t).ceil() as usize).max(64)
}

/// Gauss-Legendre quadrature of
/// `𝓘(t, c⟨∇⟩_c, v) = ∫₀ᵗ e^{−isc⟨∇⟩_c}(e^{isc⟨∇⟩_c}v + e^{−isc⟨∇⟩_c}v̄)³ ds`,
/// with products formed on the dealiased grid.
pub fn osc_integral_oracle(
    v: &SpectralField,
    t: f64,
    c: f64,
    n_nodes: usize,
) -> Result<SpectralField> {
    check_c(c)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(KgError::InvalidParameter(format!("integration length {t}")));
    }
    if !(c * c * t / (n_nodes as f64) < 0.5) {
        return Err(KgError::InsufficientNodes {
            required: osc_nodes_rule(c, t),
            given: n_nodes,
        });
    }
    let caller = v.grid().clone();
    let grid = caller.with_dealias(true);
    let v = v.on_grid(&grid)?;
    let lc: Vec<f64> = grid.k2().iter().map(|&k2| lc_value(c, k2)).collect();
    let (x, w) = gauss_legendre(n_nodes);
    let mut acc = SpectralField::zeros(&grid);
    for (xi, wi) in x.iter().zip(&w) {
        let s = 0.5 * t * (xi + 1.0);
        let e = Angle::c2t(c, s).cis();
        let fwd: Vec<Complex64> = lc
            .iter()
            .map(|&l| e * Complex64::new((s * l).cos(), (s * l).sin()))
            .collect();
        let back = Multiplier::from_values(fwd.iter().map(|z| z.conj()).collect());
        let fwd = Multiplier::from_values(fwd);
        let big = v.apply(&fwd);
        let z = &big + &big.conj();
        let val = cubic_product(&z, &z, &z)?.apply(&back);
        acc.axpy(Complex64::from(0.5 * t * wi), &val);
    }
    acc.on_grid(&caller)
}
