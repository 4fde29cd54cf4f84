use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::phase::Angle;
use crate::phi::{osc_weight, phi1, phi2, psi2};
use crate::spectral::{lc_value, Grid, Multiplier};

/// Weight used in the second-order correction brackets.
///
/// `Integrated` is the weight `∫₀^τ (s/τ) e^{sλ} ds = τΨ₂(τλ)` that follows
/// from interpolating each bracket linearly in `s`; `Phi2` puts `φ₂` in
/// the same slots (and, for NLS, moves the outer free flow inside the
/// braces). The two agree to first order only; see the crate README.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectionWeights {
    #[default]
    Integrated,
    Phi2,
}

fn real_table(grid: &Grid, f: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.k2().iter().map(|&k2| f(k2)).collect()
}

fn table(values: impl Iterator<Item = Complex64>) -> Result<Multiplier> {
    let values: Vec<Complex64> = values.collect();
    if values
        .iter()
        .any(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(KgError::NonFinite("precomputed symbol table".into()));
    }
    Ok(Multiplier::from_values(values))
}

fn cis(x: f64) -> Complex64 {
    Complex64::new(x.cos(), x.sin())
}

/// Every table and scalar weight the steppers need for one `(c, τ, grid)`.
/// Immutable once built and shareable across threads.
#[derive(Clone, Debug)]
pub struct PrecomputedSymbols {
    pub(crate) grid: Arc<Grid>,
    pub(crate) c: f64,
    pub(crate) tau: f64,
    pub(crate) coupling: f64,
    pub(crate) weights: CorrectionWeights,

    /// `e^{iτc⟨∇⟩_c}`, formed as `e^{iθ}e^{iτL_c}` with `θ = c²τ` reduced
    pub(crate) free: Multiplier,
    pub(crate) el_p: Multiplier,
    pub(crate) el_m: Multiplier,
    /// `c⟨∇⟩_c⁻¹`
    pub(crate) a: Multiplier,
    pub(crate) phi1_l: Multiplier,
    pub(crate) phi1_w: Multiplier,
    pub(crate) phi1_wc: Multiplier,
    pub(crate) corr_l: Multiplier,
    pub(crate) corr_w: Multiplier,
    pub(crate) corr_wc: Multiplier,

    pub(crate) phi1_2c: Complex64,
    pub(crate) corr_2c: Complex64,
    /// Coefficients of `u³, u²ū, uū², ū³` in the inner bracket of each 𝓜ⱼ.
    pub(crate) m_inner: [[Complex64; 4]; 6],
    /// Outer prefactor `±(1/64)e^{ic²τ}` of each 𝓜ⱼ.
    pub(crate) m_outer: [Complex64; 6],

    /// `e^{−iτΔ/2}`, symbol `e^{iτ|k|²/2}`
    pub(crate) half_lap: Multiplier,
    pub(crate) nls_phi1: Multiplier,
    pub(crate) nls_phi2: Multiplier,
    pub(crate) nls_psi2: Multiplier,
}

impl PrecomputedSymbols {
    pub fn new(grid: &Arc<Grid>, c: f64, tau: f64) -> Result<Self> {
        crate::model::check_c(c)?;
        if !(tau.is_finite() && tau > 0.0) {
            return Err(KgError::InvalidParameter(format!(
                "time step must be positive, got {tau}"
            )));
        }
        let c2 = c * c;
        let theta = Angle::c2t(c, tau);
        let x = theta.value();
        let i = Complex64::i();

        let lc = real_table(grid, |k2| tau * lc_value(c, k2));
        // τ·c⟨∇⟩_c = c²τ + τL_c
        let w = lc.iter().map(|l| x + l).collect::<Vec<_>>();
        let wc = lc.iter().map(|l| 2.0 * x + l).collect::<Vec<_>>();

        let e_theta = theta.cis();
        let free = table(lc.iter().map(|&l| e_theta * cis(l)))?;
        let el_p = table(lc.iter().map(|&l| cis(l)))?;
        let el_m = table(lc.iter().map(|&l| cis(-l)))?;
        let a = table(
            real_table(grid, |k2| c / (k2 + c2).sqrt())
                .into_iter()
                .map(Complex64::from),
        )?;

        let op = |vals: &[f64], f: fn(Complex64) -> Complex64| {
            table(vals.iter().map(|&v| f(-2.0 * i * v)))
        };
        let corr: fn(Complex64) -> Complex64 = psi2;

        let half = real_table(grid, |k2| 0.5 * tau * k2);
        let sc = |f: fn(Complex64) -> Complex64, m: f64| f(i * m * x);
        let osc = |l: i64, m: i64| osc_weight(l, m, x).map(|v| v * (tau * tau));
        let t2 = tau * tau;
        let m_inner = [
            [
                osc(2, 2)?,
                3.0 * t2 * sc(psi2, 2.0),
                3.0 * t2 * sc(phi2, 2.0),
                osc(-4, 2)?,
            ],
            [
                t2 * sc(phi2, 4.0),
                3.0 * t2 * sc(phi2, 2.0),
                Complex64::from(1.5 * t2),
                t2 * sc(phi2, -2.0),
            ],
            [
                t2 * sc(phi2, -2.0),
                3.0 * t2 * sc(psi2, -2.0),
                3.0 * osc(-2, -2)?,
                osc(-4, -2)?,
            ],
            [
                t2 * sc(phi2, -4.0),
                3.0 * osc(2, -4)?,
                3.0 * t2 * sc(psi2, -4.0),
                osc(-2, -4)?,
            ],
            [
                t2 * sc(phi2, 2.0),
                Complex64::from(1.5 * t2),
                3.0 * t2 * sc(phi2, -2.0),
                t2 * sc(phi2, -4.0),
            ],
            [
                osc(4, -2)?,
                3.0 * t2 * sc(phi2, -2.0),
                3.0 * t2 * sc(psi2, -2.0),
                osc(-2, -2)?,
            ],
        ];
        let p = e_theta / 64.0;
        let m_outer = [-p, p, -p, p, -p, p];

        let pre = PrecomputedSymbols {
            grid: grid.clone(),
            c,
            tau,
            coupling: 1.0,
            weights: CorrectionWeights::Integrated,
            free,
            el_p,
            el_m,
            a,
            phi1_l: op(&lc, phi1)?,
            phi1_w: op(&w, phi1)?,
            phi1_wc: op(&wc, phi1)?,
            corr_l: op(&lc, corr)?,
            corr_w: op(&w, corr)?,
            corr_wc: op(&wc, corr)?,
            phi1_2c: sc(phi1, 2.0),
            corr_2c: sc(corr, 2.0),
            m_inner,
            m_outer,
            half_lap: table(half.iter().map(|&h| cis(h)))?,
            nls_phi1: table(half.iter().map(|&h| phi1(-2.0 * i * h)))?,
            nls_phi2: table(half.iter().map(|&h| phi2(-2.0 * i * h)))?,
            nls_psi2: table(half.iter().map(|&h| psi2(-2.0 * i * h)))?,
        };
        if !pre
            .m_inner
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
        {
            return Err(KgError::NonFinite("second-order scalar weights".into()));
        }
        Ok(pre)
    }

    /// Same tables with a different correction weight in the second-order
    /// brackets.
    pub fn with_weights(mut self, weights: CorrectionWeights) -> Result<Self> {
        if weights == self.weights {
            return Ok(self);
        }
        let f: fn(Complex64) -> Complex64 = match weights {
            CorrectionWeights::Integrated => psi2,
            CorrectionWeights::Phi2 => phi2,
        };
        let i = Complex64::i();
        let tau = self.tau;
        let c = self.c;
        let x = Angle::c2t(c, tau).value();
        let lc = real_table(&self.grid, |k2| tau * lc_value(c, k2));
        self.corr_l = table(lc.iter().map(|&l| f(-2.0 * i * l)))?;
        self.corr_w = table(lc.iter().map(|&l| f(-2.0 * i * (x + l))))?;
        self.corr_wc = table(lc.iter().map(|&l| f(-2.0 * i * (2.0 * x + l))))?;
        self.corr_2c = f(2.0 * i * x);
        self.weights = weights;
        Ok(self)
    }

    /// Scales the nonlinearity; `0` leaves only the free flow.
    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn weights(&self) -> CorrectionWeights {
        self.weights
    }

    /// The table of `e^{iτc⟨∇⟩_c}`.
    pub fn free_flow(&self) -> &Multiplier {
        &self.free
    }

    /// The table of `e^{−iτΔ/2}`.
    pub fn half_laplacian_flow(&self) -> &Multiplier {
        &self.half_lap
    }

    pub(crate) fn check_for(&self, c: f64, grid: &Arc<Grid>) -> Result<()> {
        if c != self.c {
            return Err(KgError::InvalidParameter(format!(
                "symbols built for c = {}, state has c = {c}",
                self.c
            )));
        }
        if **grid != *self.grid {
            return Err(KgError::GridMismatch);
        }
        Ok(())
    }
}
