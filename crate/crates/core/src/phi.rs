//! The φ-function family used by the integrators, as complex scalars and as
//! diagonal operator symbols.
//!
//! * `φ₁(z) = (e^z − 1)/z`
//! * `φ₂(z) = (φ₁(z) − 1)/z`
//! * `Ψ₂(z) = (e^z(z − 1) + 1)/z²`, so that `t²Ψ₂(iωt) = ∫₀ᵗ s e^{iωs} ds`
//! * `osc_weight(ℓ, m, x) = (φ₁(i(ℓ+m)x) − φ₁(imx))/(iℓx)`, so that
//!   `t²·osc_weight(ℓ, m, c²t) = ∫₀ᵗ s e^{imc²s} φ₁(iℓc²s) ds`
//!
//! Each function switches to a Taylor series near the origin, where the closed
//! form cancels catastrophically.

use num_complex::Complex64;

use crate::error::{KgError, Result};
use crate::spectral::Symbol;

/// Below this modulus `φ₁` uses its degree-4 Taylor polynomial.
pub const PHI1_SERIES_RADIUS: f64 = 1e-4;
/// Below this modulus `φ₂`, `Ψ₂` and the oscillation weight use their series.
pub const SERIES_RADIUS: f64 = 1.0;

const SERIES_TERMS: usize = 24;

/// `e^z − 1` without cancellation for small `|z|`.
pub fn expm1(z: Complex64) -> Complex64 {
    let (a, b) = (z.re, z.im);
    let ea1 = a.exp_m1();
    let half = (0.5 * b).sin();
    let cos_m1 = -2.0 * half * half;
    Complex64::new(ea1 * b.cos() + cos_m1, a.exp() * b.sin())
}

pub fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < PHI1_SERIES_RADIUS {
        let one = Complex64::new(1.0, 0.0);
        one + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)))
    } else {
        expm1(z) / z
    }
}

/// Σ_{j≥0} coef(j) z^j, Horner from the tail.
fn series(z: Complex64, coef: impl Fn(usize) -> f64) -> Complex64 {
    (0..SERIES_TERMS)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, j| acc * z + coef(j))
}

fn inv_factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc / k as f64)
}

pub fn phi2(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series(z, |j| inv_factorial(j + 2))
    } else {
        (phi1(z) - 1.0) / z
    }
}

pub fn psi2(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series(z, |j| inv_factorial(j) / (j + 2) as f64)
    } else {
        (expm1(z) * (z - 1.0) + z) / (z * z)
    }
}

/// `(φ₁(i(ℓ+m)x) − φ₁(imx))/(iℓx)`, the scaled value of
/// `∫₀ᵗ s e^{imc²s} φ₁(iℓc²s) ds` at `x = c²t`.
pub fn osc_weight(ell: i64, m: i64, x: f64) -> Result<Complex64> {
    if ell == 0 {
        return Err(KgError::InvalidParameter(
            "oscillation weight needs a nonzero frequency ℓ".into(),
        ));
    }
    let a = (ell + m) as f64;
    let mf = m as f64;
    let spread = a.abs().max(mf.abs()).max((ell as f64).abs());
    if spread * x.abs() < SERIES_RADIUS {
        // Σ_{j≥1} q_j (ix)^{j-1}/(j+1)!, q_j = (a^j − m^j)/ℓ = Σ_p a^p m^{j-1-p}
        let w = Complex64::new(0.0, x);
        let mut coefs = Vec::with_capacity(SERIES_TERMS);
        let mut q = 1.0;
        let mut mpow = mf;
        for j in 1..=SERIES_TERMS {
            coefs.push(q * inv_factorial(j + 1));
            q = a * q + mpow;
            mpow *= mf;
        }
        return Ok(coefs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c));
    }
    let i = Complex64::i();
    Ok((phi1(i * a * x) - phi1(i * mf * x)) / (i * ell as f64 * x))
}

/// Operator symbol `k ↦ φ₁(i·a·s(k))`.
pub fn phi1_op(a: f64, s: &Symbol) -> Symbol {
    s.map(move |v| phi1(Complex64::i() * a * v))
}

/// Operator symbol `k ↦ φ₂(i·a·s(k))`.
pub fn phi2_op(a: f64, s: &Symbol) -> Symbol {
    s.map(move |v| phi2(Complex64::i() * a * v))
}

/// Operator symbol `k ↦ Ψ₂(i·a·s(k))`.
pub fn psi2_op(a: f64, s: &Symbol) -> Symbol {
    s.map(move |v| psi2(Complex64::i() * a * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{sym_cnabla, sym_lc};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gauss_legendre_64(f: impl Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
        let (x, w) = crate::oracle::gauss_legendre(64);
        let h = 0.5 * (b - a);
        x.iter()
            .zip(&w)
            .map(|(xi, wi)| f(a + h * (xi + 1.0)) * (wi * h))
            .sum()
    }

    #[test]
    fn removable_singularities() {
        assert_eq!(phi1(c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(phi2(c(0.0, 0.0)), c(0.5, 0.0));
        assert_eq!(psi2(c(0.0, 0.0)), c(0.5, 0.0));
        for (l, m) in [(1, 0), (2, 2), (-4, -2), (4, -2), (7, 3)] {
            let w = osc_weight(l, m, 1e-12).unwrap();
            assert!((w - c(0.5, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn phi1_tiny_argument() {
        // (1/z)∫₀^z e^s ds = 1 + z/2 + z²/6 + ... at z = 1e-8
        let z = 1e-8;
        let exact = 1.0 + z / 2.0 + z * z / 6.0;
        assert!((phi1(c(z, 0.0)).re - exact).abs() < 1e-15);
    }

    #[test]
    fn phi1_on_imaginary_axis_is_bounded() {
        for x in -100..=100 {
            assert!(phi1(c(0.0, x as f64)).norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn phi2_definition_chain() {
        let z = c(0.0, std::f64::consts::PI);
        let lhs = phi2(z);
        let rhs = (phi1(z) - 1.0) / z;
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn phi2_integral_identity() {
        // t²φ₂(iℓc²t) = ∫₀ᵗ (e^{iℓc²s} − 1)/(iℓc²) ds at (t, ℓ, c) = (0.1, 2, 3)
        let (t, l, cc) = (0.1, 2.0, 3.0);
        let w = l * cc * cc;
        let quad = gauss_legendre_64(|s| expm1(c(0.0, w * s)) / c(0.0, w), 0.0, t);
        let val = phi2(c(0.0, w * t)) * (t * t);
        assert!((val - quad).norm() < 1e-15, "{val} vs {quad}");
    }

    #[test]
    fn psi2_matches_quadrature() {
        // (t, m, c) = (0.2, −2, 5)
        let (t, m, cc) = (0.2, -2.0, 5.0);
        let w = m * cc * cc;
        let quad = gauss_legendre_64(|s| c(0.0, w * s).exp() * s, 0.0, t);
        let val = psi2(c(0.0, w * t)) * (t * t);
        assert!((val - quad).norm() < 1e-12, "{val} vs {quad}");
    }

    #[test]
    fn psi2_conjugate_symmetry() {
        let z = c(0.0, std::f64::consts::PI);
        let s = psi2(z) + psi2(-z);
        assert!(s.im.abs() < 1e-16);
    }

    #[test]
    fn osc_weight_matches_quadrature() {
        let (t, cc) = (0.05, 20.0);
        let c2 = cc * cc;
        let quad = gauss_legendre_64(
            |s| c(0.0, c2 * s).exp() * phi1(c(0.0, 2.0 * c2 * s)) * s,
            0.0,
            t,
        );
        let val = osc_weight(2, 1, c2 * t).unwrap() * (t * t);
        assert!((val - quad).norm() < 1e-11, "{val} vs {quad}");
    }

    #[test]
    fn osc_weight_conjugation() {
        for x in [1e-5, 0.01, 0.3, 2.0, 50.0] {
            let a = osc_weight(-4, -1, x).unwrap();
            let b = osc_weight(4, 1, x).unwrap().conj();
            assert!((a - b).norm() < 1e-15 * a.norm().max(1.0));
        }
    }

    #[test]
    fn osc_weight_rejects_zero_frequency() {
        assert!(osc_weight(0, 3, 0.1).is_err());
    }

    #[test]
    fn operator_symbols() {
        let tau = 0.01;
        let cc = 10.0;
        let p = phi1_op(-2.0 * tau, &sym_lc(cc));
        assert_eq!(p.eval([0, 0]), c(1.0, 0.0));
        let q = phi1_op(-2.0 * tau, &sym_cnabla(cc));
        for k in -64..64 {
            assert!(q.eval([k, 0]).norm() <= 1.0 + 1e-15);
        }
        let r = phi2_op(-2.0 * tau, &sym_lc(cc));
        for k in -64..64 {
            let l = crate::spectral::lc_value(cc, (k * k) as f64);
            assert_eq!(r.eval([k, 0]), phi2(c(0.0, -2.0 * tau * l)));
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        for &r in &[SERIES_RADIUS * (1.0 - 1e-9), SERIES_RADIUS * (1.0 + 1e-9)] {
            for ang in 0..16 {
                let th = ang as f64 * std::f64::consts::PI / 8.0;
                let z = Complex64::from_polar(r, th);
                let p2s = series(z, |j| inv_factorial(j + 2));
                let p2c = (phi1(z) - 1.0) / z;
                assert!((p2s - p2c).norm() < 1e-13 * p2s.norm());
                let s2s = series(z, |j| inv_factorial(j) / (j + 2) as f64);
                let s2c = (expm1(z) * (z - 1.0) + z) / (z * z);
                assert!((s2s - s2c).norm() < 1e-13 * s2s.norm());
            }
        }
    }
}
