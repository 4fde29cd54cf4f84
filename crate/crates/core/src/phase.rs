//! Accurate evaluation of the fast phases `e^{i m c² t}`.
//!
//! `c²τ` is formed in double-double arithmetic and reduced modulo 2π there,
//! so `e^{i n c² τ}` is accurate to a few ulps even when `n c² τ` is ~10⁶ rad.

use num_complex::Complex64;

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// An angle held as an unreduced double-double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    hi: f64,
    lo: f64,
}

impl Angle {
    pub fn new(x: f64) -> Self {
        Angle { hi: x, lo: 0.0 }
    }

    /// `c²·t`, rounded once in double-double precision.
    pub fn c2t(c: f64, t: f64) -> Self {
        let (p, e) = two_prod(c, c);
        Angle { hi: p, lo: e }.scale(t)
    }

    /// Multiplies by a real factor.
    pub fn scale(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Angle { hi, lo }
    }

    /// Multiplies by an integer step count.
    pub fn times(self, n: i64) -> Self {
        self.scale(n as f64)
    }

    /// Nearest double to the unreduced angle.
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// Representative in `[-π, π]`.
    pub fn reduced(self) -> f64 {
        let q = (self.hi / TWO_PI_HI).round();
        let (p, pe) = two_prod(q, TWO_PI_HI);
        let (s, se) = two_sum(self.hi, -p);
        s + (se + self.lo - pe - q * TWO_PI_LO)
    }

    /// `e^{i·angle}`.
    pub fn cis(self) -> Complex64 {
        let r = self.reduced();
        Complex64::new(r.cos(), r.sin())
    }
}

/// `e^{i m c² t}` with the argument reduced in extended precision.
pub fn fast_phase(m: i64, c: f64, t: f64) -> Complex64 {
    Angle::c2t(c, t).times(m).cis()
}
