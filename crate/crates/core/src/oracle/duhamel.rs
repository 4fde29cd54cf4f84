//! One step of the exact flow by Gauss collocation in the interaction
//! picture. `w(s) = e^{−isc⟨∇⟩_c}u(s)` obeys
//! `w' = −(i/8)e^{−isc⟨∇⟩_c}c⟨∇⟩_c⁻¹(e^{isc⟨∇⟩_c}w + e^{−isc⟨∇⟩_c}w̄)³`,
//! whose right-hand side oscillates with rates up to `4c² + 4 max L_c`. The
//! step is split so each substep spans at most [`MAX_PHASE_PER_SUBSTEP`]
//! radians of that rate, and every substep is a 16-stage Gauss method
//! (order 32) solved by fixed-point iteration.

use std::sync::Arc;

use num_complex::Complex64;

use super::quadrature::gauss_legendre;
use crate::error::{KgError, Result};
use crate::model::check_c;
use crate::phase::Angle;
use crate::spectral::{cubic_product, lc_value, Grid, Multiplier, SpectralField};

pub const STAGES: usize = 16;
pub const MAX_PHASE_PER_SUBSTEP: f64 = 1.5;
const MAX_SWEEPS: usize = 200;

struct Tableau {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: Vec<Vec<f64>>,
}

fn lagrange(nodes: &[f64], j: usize, x: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .map(|(_, &xm)| (x - xm) / (nodes[j] - xm))
        .product()
}

/// Gauss collocation tableau on `[0, 1]`. `a[i][j] = ∫₀^{c_i} ℓ_j`, integrated
/// by the same Gauss rule mapped to `[0, c_i]` (exact for degree `M − 1`).
fn tableau(m: usize) -> Tableau {
    let (x, w) = gauss_legendre(m);
    let nodes: Vec<f64> = x.iter().map(|v| 0.5 * (v + 1.0)).collect();
    let weights: Vec<f64> = w.iter().map(|v| 0.5 * v).collect();
    let a = nodes
        .iter()
        .map(|&ci| {
            (0..m)
                .map(|j| {
                    ci * nodes
                        .iter()
                        .zip(&weights)
                        .map(|(&xq, &wq)| wq * lagrange(&nodes, j, ci * xq))
                        .sum::<f64>()
                })
                .collect()
        })
        .collect();
    Tableau { nodes, weights, a }
}

struct Rhs {
    grid: Arc<Grid>,
    c: f64,
    lc: Vec<f64>,
    a: Multiplier,
}

impl Rhs {
    /// `e^{isc⟨∇⟩_c}` with the `c²s` part reduced in double-double.
    fn flow(&self, s: f64) -> Multiplier {
        let e = Angle::c2t(self.c, s).cis();
        Multiplier::from_values(
            self.lc
                .iter()
                .map(|&l| e * Complex64::new((s * l).cos(), (s * l).sin()))
                .collect(),
        )
    }

    fn eval(&self, s: f64, w: &SpectralField) -> Result<SpectralField> {
        let fwd = self.flow(s);
        let back = Multiplier::from_values(fwd.values().iter().map(|v| v.conj()).collect());
        let big = w.apply(&fwd);
        let z = &big + &big.conj();
        let cube = cubic_product(&z, &z, &z)?;
        Ok(cube
            .apply(&self.a)
            .apply(&back)
            .scale(Complex64::new(0.0, -0.125)))
    }
}

/// Substeps needed so that each spans ≤ 1.5 rad of the fastest phase.
pub fn collocation_substeps(grid: &Grid, c: f64, t: f64) -> usize {
    let lmax = grid
        .k2()
        .iter()
        .fold(0.0f64, |m, &k2| m.max(lc_value(c, k2)));
    let rate = 4.0 * c * c + 4.0 * lmax + 1.0;
    ((rate * t / MAX_PHASE_PER_SUBSTEP).ceil() as usize).max(1)
}

/// `u(t)` from `u(0) = u0` for the first-order system, to near machine
/// precision.
pub fn duhamel_reference_step(u0: &SpectralField, c: f64, t: f64) -> Result<SpectralField> {
    check_c(c)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(KgError::InvalidParameter(format!("step length {t}")));
    }
    if t == 0.0 {
        return Ok(u0.clone());
    }
    let grid = u0.grid().clone();
    let rhs = Rhs {
        c,
        lc: grid.k2().iter().map(|&k2| lc_value(c, k2)).collect(),
        a: crate::spectral::sym_c_over_nabla(c).tabulate(&grid)?,
        grid,
    };
    let tab = tableau(STAGES);
    let k = collocation_substeps(&rhs.grid, c, t);
    let h = t / k as f64;
    let mut w = u0.clone();
    for sub in 0..k {
        let s0 = sub as f64 * h;
        w = gauss_substep(&rhs, &tab, s0, h, &w)?;
    }
    Ok(w.apply(&rhs.flow(t)))
}

fn gauss_substep(
    rhs: &Rhs,
    tab: &Tableau,
    s0: f64,
    h: f64,
    w0: &SpectralField,
) -> Result<SpectralField> {
    let m = tab.nodes.len();
    let times: Vec<f64> = tab.nodes.iter().map(|ci| s0 + ci * h).collect();
    let mut f: Vec<SpectralField> = times
        .iter()
        .map(|&s| rhs.eval(s, w0))
        .collect::<Result<_>>()?;
    let scale = w0.max_abs().max(1e-300);
    let mut last_change = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let stages: Vec<SpectralField> = (0..m)
            .map(|i| {
                let mut y = w0.clone();
                for (j, fj) in f.iter().enumerate() {
                    y.axpy(Complex64::from(h * tab.a[i][j]), fj);
                }
                y
            })
            .collect();
        let next: Vec<SpectralField> = times
            .iter()
            .zip(&stages)
            .map(|(&s, y)| rhs.eval(s, y))
            .collect::<Result<_>>()?;
        let change = next
            .iter()
            .zip(&f)
            .map(|(a, b)| (a - b).max_abs())
            .fold(0.0, f64::max)
            * h;
        f = next;
        if change <= 1e-17 * scale || (change >= last_change && change < 1e-13 * scale) {
            break;
        }
        last_change = change;
    }
    let mut w1 = w0.clone();
    for (j, fj) in f.iter().enumerate() {
        w1.axpy(Complex64::from(h * tab.weights[j]), fj);
    }
    if !w1.is_finite() {
        return Err(KgError::NonFinite("collocation reference step".into()));
    }
    Ok(w1)
}
