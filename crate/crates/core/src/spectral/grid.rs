use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{KgError, Result};

/// Signed wavenumber of FFT-ordered index `j` on an `n`-point axis.
#[inline]
pub(crate) fn freq(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// FFT-ordered index of wavenumber `k` on an `n`-point axis (wraps mod `n`).
#[inline]
pub(crate) fn index_of(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

#[derive(Clone)]
struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Plans {
    fn new(planner: &mut FftPlanner<f64>, n: usize) -> Self {
        Plans {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }
}

/// Discretization of the torus `[0, 2π)^dim` with `n_modes` Fourier modes per
/// direction.
///
/// Coefficients are stored in FFT order: flat index `j` (row-major in 2D) holds
/// the mode whose per-axis wavenumbers are given by [`Grid::mode`]. Pointwise
/// products are formed on the collocation grid, or on a 2x zero-padded grid
/// when dealiasing is switched on.
#[derive(Clone)]
pub struct Grid {
    dim: usize,
    n: usize,
    dealias: bool,
    wavenumbers: Vec<i64>,
    modes: Vec<[i64; 2]>,
    k2: Vec<f64>,
    neg: Vec<usize>,
    plans: Plans,
    padded: Plans,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("dim", &self.dim)
            .field("n_modes", &self.n)
            .field("dealias", &self.dealias)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.n == other.n && self.dealias == other.dealias
    }
}

/// Builds a grid with dealiasing off.
pub fn make_grid(dim: usize, n_modes: usize) -> Result<Arc<Grid>> {
    Grid::new(dim, n_modes, false).map(Arc::new)
}

impl Grid {
    pub fn new(dim: usize, n_modes: usize, dealias: bool) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(KgError::InvalidGrid(format!(
                "dimension must be 1 or 2, got {dim}"
            )));
        }
        if n_modes < 4 || !n_modes.is_power_of_two() {
            return Err(KgError::InvalidGrid(format!(
                "modes per direction must be a power of two >= 4, got {n_modes}"
            )));
        }
        let n = n_modes;
        let total = n.pow(dim as u32);
        let wavenumbers: Vec<i64> = (-(n as i64) / 2..n as i64 / 2).collect();
        let mut modes = Vec::with_capacity(total);
        let mut neg = Vec::with_capacity(total);
        for j in 0..total {
            let (j0, j1) = if dim == 1 { (j, 0) } else { (j / n, j % n) };
            let k = if dim == 1 {
                [freq(j0, n), 0]
            } else {
                [freq(j0, n), freq(j1, n)]
            };
            let nj = if dim == 1 {
                index_of(-k[0], n)
            } else {
                index_of(-k[0], n) * n + index_of(-k[1], n)
            };
            modes.push(k);
            neg.push(nj);
        }
        let k2 = modes
            .iter()
            .map(|k| (k[0] * k[0] + k[1] * k[1]) as f64)
            .collect();
        let mut planner = FftPlanner::new();
        let plans = Plans::new(&mut planner, n);
        let padded = Plans::new(&mut planner, 2 * n);
        Ok(Grid {
            dim,
            n,
            dealias,
            wavenumbers,
            modes,
            k2,
            neg,
            plans,
            padded,
        })
    }

    /// Same discretization with the dealiasing flag replaced.
    pub fn with_dealias(&self, dealias: bool) -> Arc<Grid> {
        let mut g = self.clone();
        g.dealias = dealias;
        Arc::new(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    pub fn dealias(&self) -> bool {
        self.dealias
    }

    /// Total number of modes, `n_modes^dim`.
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// The centered wavenumber set `{-N/2, ..., N/2 - 1}` of one direction.
    pub fn wavenumbers(&self) -> &[i64] {
        &self.wavenumbers
    }

    /// Wavenumber vector of flat index `j` (second entry is 0 in 1D).
    pub fn mode(&self, j: usize) -> [i64; 2] {
        self.modes[j]
    }

    pub fn modes(&self) -> &[[i64; 2]] {
        &self.modes
    }

    /// `|k|^2` per flat index.
    pub fn k2(&self) -> &[f64] {
        &self.k2
    }

    /// Flat index of `-k` for each flat index `k` (wrapping mod N).
    pub(crate) fn neg_index(&self) -> &[usize] {
        &self.neg
    }

    /// Flat index of a wavenumber vector, or `None` if it is not on the grid.
    pub fn index(&self, k: [i64; 2]) -> Option<usize> {
        let half = self.n as i64 / 2;
        let inside = |x: i64| (-half..half).contains(&x);
        if !inside(k[0]) || (self.dim == 2 && !inside(k[1])) || (self.dim == 1 && k[1] != 0) {
            return None;
        }
        let j0 = index_of(k[0], self.n);
        Some(if self.dim == 1 {
            j0
        } else {
            j0 * self.n + index_of(k[1], self.n)
        })
    }

    /// Collocation points `x_j = 2πj/N` of one direction.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / self.n as f64)
            .collect()
    }

    /// Number of points of the space where pointwise products are formed.
    pub(crate) fn product_len(&self) -> usize {
        if self.dealias {
            (2 * self.n).pow(self.dim as u32)
        } else {
            self.len()
        }
    }

    /// Physical values on the collocation grid: `g(x_j) = Σ_k f̂_k e^{ik·x_j}`.
    pub(crate) fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        self.transform(&mut buf, self.n, &self.plans.inverse);
        buf
    }

    /// Inverse of [`Grid::synthesize`]: mean-normalized forward transform.
    pub(crate) fn analyze(&self, values: &[Complex64]) -> Vec<Complex64> {
        let mut buf = values.to_vec();
        self.transform(&mut buf, self.n, &self.plans.forward);
        let scale = 1.0 / self.len() as f64;
        buf.iter_mut().for_each(|v| *v *= scale);
        buf
    }

    /// Physical values in product space (padded when dealiasing).
    pub(crate) fn to_product_space(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        if !self.dealias {
            return self.synthesize(coeffs);
        }
        let m = 2 * self.n;
        let mut buf = vec![Complex64::new(0.0, 0.0); self.product_len()];
        let half = self.n as i64 / 2;
        for (j, c) in coeffs.iter().enumerate() {
            let k = self.modes[j];
            // the unpaired -N/2 mode is dropped so conjugation commutes with padding
            if k[0] == -half || (self.dim == 2 && k[1] == -half) {
                continue;
            }
            let p = if self.dim == 1 {
                index_of(k[0], m)
            } else {
                index_of(k[0], m) * m + index_of(k[1], m)
            };
            buf[p] = *c;
        }
        self.transform(&mut buf, m, &self.padded.inverse);
        buf
    }

    /// Spectral coefficients of product-space values, truncated to the grid.
    pub(crate) fn from_product_space(&self, values: Vec<Complex64>) -> Vec<Complex64> {
        if !self.dealias {
            return self.analyze(&values);
        }
        let m = 2 * self.n;
        let mut buf = values;
        self.transform(&mut buf, m, &self.padded.forward);
        let scale = 1.0 / buf.len() as f64;
        let half = self.n as i64 / 2;
        self.modes
            .iter()
            .map(|&k| {
                if k[0] == -half || (self.dim == 2 && k[1] == -half) {
                    return Complex64::new(0.0, 0.0);
                }
                let p = if self.dim == 1 {
                    index_of(k[0], m)
                } else {
                    index_of(k[0], m) * m + index_of(k[1], m)
                };
                buf[p] * scale
            })
            .collect()
    }

    fn transform(&self, buf: &mut [Complex64], m: usize, plan: &Arc<dyn Fft<f64>>) {
        if self.dim == 1 {
            plan.process(buf);
            return;
        }
        // rows
        for row in buf.chunks_exact_mut(m) {
            plan.process(row);
        }
        // columns
        let mut col = vec![Complex64::new(0.0, 0.0); m];
        for c in 0..m {
            for r in 0..m {
                col[r] = buf[r * m + c];
            }
            plan.process(&mut col);
            for r in 0..m {
                buf[r * m + c] = col[r];
            }
        }
    }
}
