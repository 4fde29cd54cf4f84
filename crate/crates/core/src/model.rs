//! Problem definition for the real Klein-Gordon field: the twisted variable
//! `u = z − i c⁻¹⟨∇⟩_c⁻¹ ∂ₜz`, its inverse `z = ½(u + ū)`, and initial data.
//!
//! Only real `z` is modelled, so the second twisted variable `v` coincides
//! with `u` and is never stored.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::spectral::{sym_cnabla_inv, to_spectral, Grid, SpectralField};

/// The twisted variable `u` at time `time` for light speed `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct KGState {
    pub u: SpectralField,
    pub time: f64,
    pub c: f64,
}

impl KGState {
    pub fn new(u: SpectralField, c: f64) -> Result<Self> {
        check_c(c)?;
        Ok(KGState { u, time: 0.0, c })
    }

    pub fn z(&self) -> SpectralField {
        reconstruct_z(self)
    }
}

pub(crate) fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(KgError::InvalidParameter(format!(
            "c must be positive, got {c}"
        )))
    }
}

/// `u(0) = z₀ − i c⁻¹⟨∇⟩_c⁻¹ ∂ₜz(0)`.
///
/// `zt0` is the full time derivative `∂ₜz(0)`; with the scaling
/// `∂ₜz(0) = c² z₀'` the caller multiplies by `c²` first.
pub fn to_first_order(z0: &SpectralField, zt0: &SpectralField, c: f64) -> Result<KGState> {
    check_c(c)?;
    z0.same_grid(zt0)?;
    let m = sym_cnabla_inv(c).tabulate(z0.grid())?;
    let mut u = z0.clone();
    u.axpy(-Complex64::i(), &zt0.apply(&m));
    KGState::new(u, c)
}

/// `z = ½(u + ū)` with the spectral conjugate.
pub fn reconstruct_z(state: &KGState) -> SpectralField {
    (&state.u + &state.u.conj()).scale_re(0.5)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DataKind {
    Smooth,
    RoughRandom { theta: f64 },
}

/// Which initial data a run starts from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialDataSpec {
    #[serde(flatten)]
    pub kind: DataKind,
    pub seed: u64,
    pub amplitude: f64,
}

impl InitialDataSpec {
    pub fn smooth() -> Self {
        InitialDataSpec {
            kind: DataKind::Smooth,
            seed: 0,
            amplitude: 1.0,
        }
    }

    pub fn rough(theta: f64, seed: u64) -> Self {
        InitialDataSpec {
            kind: DataKind::RoughRandom { theta },
            seed,
            amplitude: 1.0,
        }
    }

    /// `smooth` or `rough:THETA`, as used on the command line and in CSV
    /// output.
    pub fn label(&self) -> String {
        match self.kind {
            DataKind::Smooth => "smooth".to_string(),
            DataKind::RoughRandom { theta } => format!("rough:{theta}"),
        }
    }

    /// Twisted initial value `u(0)` for light speed `c`.
    pub fn initial_state(&self, grid: &Arc<Grid>, c: f64) -> Result<KGState> {
        match self.kind {
            DataKind::Smooth => {
                let d = make_smooth_data(grid)?;
                let d = SmoothData {
                    z0: d.z0.scale_re(self.amplitude),
                    dz0: d.dz0.scale_re(self.amplitude),
                };
                d.initial_state(c)
            }
            DataKind::RoughRandom { .. } => KGState::new(make_rough_data(self, grid)?, c),
        }
    }

    /// `c → ∞` limit of `u(0)`, the starting value of the NLS-limit run.
    pub fn limit_state(&self, grid: &Arc<Grid>) -> Result<SpectralField> {
        match self.kind {
            DataKind::Smooth => {
                let d = make_smooth_data(grid)?;
                Ok(d.limit_u0().scale_re(self.amplitude))
            }
            DataKind::RoughRandom { .. } => make_rough_data(self, grid),
        }
    }
}

fn stream_id(k: [i64; 2]) -> u64 {
    ((k[0] as i32 as u32 as u64) << 32) | (k[1] as i32 as u32 as u64)
}

/// Random data with `û_k = amplitude·ξ_k·⟨k⟩^{−(θ+1/2)}`, `ξ_k` complex with
/// components uniform in `[−1, 1]`. Each wavenumber draws from its own ChaCha
/// stream, so a coarser grid sees exactly the low modes of a finer one. The
/// unpaired `−N/2` mode is zero.
pub fn make_rough_data(spec: &InitialDataSpec, grid: &Arc<Grid>) -> Result<SpectralField> {
    let theta = match spec.kind {
        DataKind::RoughRandom { theta } => theta,
        DataKind::Smooth => {
            return Err(KgError::InvalidParameter(
                "make_rough_data needs rough-random data".into(),
            ))
        }
    };
    if !(theta > 0.5) {
        return Err(KgError::InvalidParameter(format!(
            "rough data needs θ > 1/2, got {theta}"
        )));
    }
    let half = grid.n_modes() as i64 / 2;
    let coeffs = grid
        .modes()
        .iter()
        .zip(grid.k2())
        .map(|(&k, &k2)| {
            if k[0] == -half || (grid.dim() == 2 && k[1] == -half) {
                return Complex64::new(0.0, 0.0);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(stream_id(k));
            let xi = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            xi * spec.amplitude * (1.0 + k2).powf(-0.5 * (theta + 0.5))
        })
        .collect();
    SpectralField::from_coeffs(grid, coeffs)
}

/// Deterministic analytic data: `z₀` and the rescaled derivative `z₀'` with
/// `∂ₜz(0) = c² z₀'`.
#[derive(Clone, Debug)]
pub struct SmoothData {
    pub z0: SpectralField,
    pub dz0: SpectralField,
}

impl SmoothData {
    /// `∂ₜz(0) = c² z₀'`.
    pub fn time_derivative(&self, c: f64) -> SpectralField {
        self.dz0.scale_re(c * c)
    }

    pub fn initial_state(&self, c: f64) -> Result<KGState> {
        to_first_order(&self.z0, &self.time_derivative(c), c)
    }

    /// `lim_{c→∞} u(0) = z₀ − i z₀'`.
    pub fn limit_u0(&self) -> SpectralField {
        let mut u = self.z0.clone();
        u.axpy(-Complex64::i(), &self.dz0);
        u
    }
}

/// `z₀ = cos s/(2 + sin s)` and `z₀' = sin s/(2 + cos s)` with `s` the sum of
/// the coordinates. Both are real and analytic in the strip `|Im s| < 1.31`,
/// so their coefficients decay like `e^{−1.31|k|}`.
pub fn make_smooth_data(grid: &Arc<Grid>) -> Result<SmoothData> {
    let pts = grid.points();
    let n = grid.n_modes();
    let sample = |f: &dyn Fn(f64) -> f64| -> Vec<Complex64> {
        (0..grid.len())
            .map(|j| {
                let s = if grid.dim() == 1 {
                    pts[j]
                } else {
                    pts[j / n] + pts[j % n]
                };
                Complex64::new(f(s), 0.0)
            })
            .collect()
    };
    let z0 = to_spectral(&sample(&|s| s.cos() / (2.0 + s.sin())), grid)?;
    let dz0 = to_spectral(&sample(&|s| s.sin() / (2.0 + s.cos())), grid)?;
    Ok(SmoothData { z0, dz0 })
}
