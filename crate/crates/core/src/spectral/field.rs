use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::Grid;
use super::symbol::Multiplier;
use crate::error::{KgError, Result};

/// Complex Fourier coefficients of a field on a [`Grid`].
///
/// The coefficient of wavenumber `k` multiplies `e^{ik·x}`; the constant field
/// 1 has coefficient 1 at `k = 0`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: Vec<Complex64>,
}

impl PartialEq for SpectralField {
    fn eq(&self, other: &Self) -> bool {
        *self.grid == *other.grid && self.coeffs == other.coeffs
    }
}

impl SpectralField {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Wraps FFT-ordered coefficients. Rejects wrong lengths and non-finite
    /// entries.
    pub fn from_coeffs(grid: &Arc<Grid>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(KgError::SizeMismatch {
                expected: grid.len(),
                actual: coeffs.len(),
            });
        }
        if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(KgError::NonFinite("spectral coefficients".into()));
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(grid: &Arc<Grid>, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        SpectralField {
            grid: grid.clone(),
            coeffs,
        }
    }

    /// Field with a single mode `k` carrying coefficient `value`.
    pub fn mode(grid: &Arc<Grid>, k: [i64; 2], value: Complex64) -> Result<Self> {
        let j = grid
            .index(k)
            .ok_or_else(|| KgError::InvalidParameter(format!("wavenumber {k:?} not on grid")))?;
        let mut f = Self::zeros(grid);
        f.coeffs[j] = value;
        Ok(f)
    }

    /// Samples a 1D function at the collocation points and transforms.
    pub fn from_fn_1d(grid: &Arc<Grid>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(KgError::InvalidParameter(
                "from_fn_1d needs a 1D grid".into(),
            ));
        }
        let values: Vec<Complex64> = grid.points().into_iter().map(f).collect();
        to_spectral(&values, grid)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of wavenumber `k`, zero if `k` is off the grid.
    pub fn coeff(&self, k: [i64; 2]) -> Complex64 {
        self.grid
            .index(k)
            .map(|j| self.coeffs[j])
            .unwrap_or_default()
    }

    /// Same coefficients on a grid with identical modes but possibly a
    /// different dealiasing flag.
    pub fn on_grid(&self, grid: &Arc<Grid>) -> Result<Self> {
        if grid.dim() != self.grid.dim() || grid.n_modes() != self.grid.n_modes() {
            return Err(KgError::GridMismatch);
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn same_grid(&self, other: &SpectralField) -> Result<()> {
        if *self.grid == *other.grid {
            Ok(())
        } else {
            Err(KgError::GridMismatch)
        }
    }

    /// Spectral conjugate: the coefficient at `k` becomes `conj(f̂_{-k})`,
    /// which is the transform of the pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        let neg = self.grid.neg_index();
        let coeffs = neg.iter().map(|&j| self.coeffs[j].conj()).collect();
        SpectralField::from_raw(&self.grid, coeffs)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        SpectralField::from_raw(&self.grid, self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn scale_re(&self, a: f64) -> Self {
        SpectralField::from_raw(&self.grid, self.coeffs.iter().map(|c| c * a).collect())
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: Complex64, other: &SpectralField) {
        debug_assert!(*self.grid == *other.grid);
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    /// Coefficient-wise product with a precomputed multiplier table.
    pub fn apply(&self, m: &Multiplier) -> Self {
        debug_assert_eq!(m.len(), self.coeffs.len());
        SpectralField::from_raw(
            &self.grid,
            self.coeffs
                .iter()
                .zip(m.values())
                .map(|(c, s)| c * s)
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Sobolev norm `(Σ_k (1+|k|²)^r |f̂_k|²)^{1/2}`.
    pub fn hr_norm(&self, r: f64) -> f64 {
        hr_norm(self, r)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn to_physical(&self) -> Vec<Complex64> {
        to_physical(self)
    }
}

/// Physical values at the collocation points.
pub fn to_physical(f: &SpectralField) -> Vec<Complex64> {
    f.grid.synthesize(&f.coeffs)
}

/// Spectral coefficients of physical samples; inverse of [`to_physical`].
pub fn to_spectral(g: &[Complex64], grid: &Arc<Grid>) -> Result<SpectralField> {
    if g.len() != grid.len() {
        return Err(KgError::SizeMismatch {
            expected: grid.len(),
            actual: g.len(),
        });
    }
    SpectralField::from_coeffs(grid, grid.analyze(g))
}

/// Sobolev `H^r` norm `(Σ_k (1+|k|²)^r |f̂_k|²)^{1/2}`.
pub fn hr_norm(f: &SpectralField, r: f64) -> f64 {
    let k2 = f.grid.k2();
    let sum: f64 = if r == 0.0 {
        f.coeffs.iter().map(|c| c.norm_sqr()).sum()
    } else {
        f.coeffs
            .iter()
            .zip(k2)
            .map(|(c, &k2)| (1.0 + k2).powf(r) * c.norm_sqr())
            .sum()
    };
    sum.sqrt()
}

/// Values of a field in product space (padded when the grid dealiases).
pub(crate) fn product_values(f: &SpectralField) -> Vec<Complex64> {
    f.grid.to_product_space(&f.coeffs)
}

/// Spectral field from product-space values.
pub(crate) fn from_product_values(grid: &Arc<Grid>, values: Vec<Complex64>) -> SpectralField {
    SpectralField::from_raw(grid, grid.from_product_space(values))
}

/// Pointwise product `f·g·h`, formed in physical space.
pub fn cubic_product(
    f: &SpectralField,
    g: &SpectralField,
    h: &SpectralField,
) -> Result<SpectralField> {
    f.same_grid(g)?;
    f.same_grid(h)?;
    let a = product_values(f);
    let b = product_values(g);
    let c = product_values(h);
    let prod = a
        .iter()
        .zip(&b)
        .zip(&c)
        .map(|((x, y), z)| x * y * z)
        .collect();
    Ok(from_product_values(&f.grid, prod))
}

/// Pointwise product `f·g`.
pub fn quadratic_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.same_grid(g)?;
    let a = product_values(f);
    let b = product_values(g);
    let prod = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    Ok(from_product_values(&f.grid, prod))
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert!(*self.grid == *rhs.grid, "grid mismatch");
        SpectralField::from_raw(
            &self.grid,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert!(*self.grid == *rhs.grid, "grid mismatch");
        SpectralField::from_raw(
            &self.grid,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale_re(-1.0)
    }
}

impl Mul<Complex64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: Complex64) -> SpectralField {
        self.scale(rhs)
    }
}
