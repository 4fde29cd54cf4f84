use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::Grid;
use crate::error::{KgError, Result};

type Evaluator = dyn Fn([i64; 2]) -> Complex64 + Send + Sync;

/// A Fourier multiplier: a deterministic map from wavenumber vectors to
/// complex scalars. Parameters such as `c` and `τ` are captured at
/// construction.
#[derive(Clone)]
pub struct Symbol {
    eval: Arc<Evaluator>,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Symbol")
    }
}

impl Symbol {
    pub fn new(eval: impl Fn([i64; 2]) -> Complex64 + Send + Sync + 'static) -> Self {
        Symbol {
            eval: Arc::new(eval),
        }
    }

    /// Symbol depending on `|k|²` only.
    pub fn radial(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Symbol::new(move |k| eval((k[0] * k[0] + k[1] * k[1]) as f64))
    }

    pub fn real_radial(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Symbol::radial(move |k2| Complex64::new(eval(k2), 0.0))
    }

    pub fn identity() -> Self {
        Symbol::new(|_| Complex64::new(1.0, 0.0))
    }

    pub fn eval(&self, k: [i64; 2]) -> Complex64 {
        (self.eval)(k)
    }

    /// `k ↦ g(s(k))`.
    pub fn map(&self, g: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Symbol {
        let inner = self.eval.clone();
        Symbol::new(move |k| g(inner(k)))
    }

    /// Pointwise product of two symbols.
    pub fn times(&self, other: &Symbol) -> Symbol {
        let a = self.eval.clone();
        let b = other.eval.clone();
        Symbol::new(move |k| a(k) * b(k))
    }

    /// Tabulates the symbol over the grid, rejecting non-finite values.
    pub fn tabulate(&self, grid: &Grid) -> Result<Multiplier> {
        let values: Vec<Complex64> = grid.modes().iter().map(|&k| self.eval(k)).collect();
        if let Some(j) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(KgError::NonFinite(format!(
                "symbol value at wavenumber {:?}",
                grid.mode(j)
            )));
        }
        Ok(Multiplier { values })
    }
}

/// A symbol tabulated on a grid's modes (FFT order).
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    values: Vec<Complex64>,
}

impl Multiplier {
    pub(crate) fn from_values(values: Vec<Complex64>) -> Self {
        Multiplier { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry-wise product of two tables.
    pub fn times(&self, other: &Multiplier) -> Multiplier {
        Multiplier {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn scaled(&self, a: Complex64) -> Multiplier {
        Multiplier {
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }
}

/// Coefficient-wise product `s(k)·f̂_k`.
pub fn apply_symbol(s: &Symbol, f: &SpectralField) -> Result<SpectralField> {
    let m = s.tabulate(f.grid())?;
    Ok(f.apply(&m))
}

/// `L_c` in the cancellation-free form `|k|²/(√(1+|k|²/c²)+1)`.
#[inline]
pub fn lc_value(c: f64, k2: f64) -> f64 {
    k2 / ((1.0 + k2 / (c * c)).sqrt() + 1.0)
}

/// `c⟨∇⟩_c`: `k ↦ c·√(|k|²+c²)`.
pub fn sym_cnabla(c: f64) -> Symbol {
    Symbol::real_radial(move |k2| c * (k2 + c * c).sqrt())
}

/// `(c⟨∇⟩_c)⁻¹`: `k ↦ 1/(c·√(|k|²+c²))`.
pub fn sym_cnabla_inv(c: f64) -> Symbol {
    Symbol::real_radial(move |k2| 1.0 / (c * (k2 + c * c).sqrt()))
}

/// `c⟨∇⟩_c⁻¹`: `k ↦ c/√(|k|²+c²)`, a contraction in every `H^r`.
pub fn sym_c_over_nabla(c: f64) -> Symbol {
    Symbol::real_radial(move |k2| c / (k2 + c * c).sqrt())
}

/// `L_c = c⟨∇⟩_c − c²`, evaluated without cancellation.
pub fn sym_lc(c: f64) -> Symbol {
    Symbol::real_radial(move |k2| lc_value(c, k2))
}

/// `k ↦ e^{i·a·s(k)}` for a real-valued symbol `s`.
pub fn sym_exp_i(a: f64, s: &Symbol) -> Symbol {
    s.map(move |v| (Complex64::i() * a * v).exp())
}
