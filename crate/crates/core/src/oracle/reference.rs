//! Fine-step reference trajectories with an on-disk cache.
//!
//! A reference is a UA_LRI2 run at a tiny step. Each run is cached under a
//! SHA-256 of everything that determines it (initial coefficients, `c`, `T`,
//! `τ_ref`, grid, weights). File layout, all little-endian:
//! `b"KGREF1"`, `N: u64`, `c: f64`, `τ_ref: f64`, `T: f64`, then the
//! coefficients as interleaved `re, im` f64 pairs in FFT order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{KgError, Result};
use crate::integrators::{evolve_with, CorrectionWeights, PrecomputedSymbols, StepperKind};
use crate::model::{to_first_order, KGState};
use crate::spectral::SpectralField;

const MAGIC: &[u8; 6] = b"KGREF1";
const HEADER_LEN: usize = 6 + 8 * 4;

/// Number of steps of length `tau` in `[0, final_time]`, rejecting
/// non-integral ratios.
pub fn step_count(final_time: f64, tau: f64) -> Result<usize> {
    if !(tau > 0.0 && final_time >= 0.0 && tau.is_finite() && final_time.is_finite()) {
        return Err(KgError::InvalidParameter(format!(
            "final time {final_time} and step {tau}"
        )));
    }
    let n = (final_time / tau).round();
    if (n * tau - final_time).abs() > 1e-12 * final_time.max(tau) {
        return Err(KgError::InvalidParameter(format!(
            "final time {final_time} is not a multiple of τ = {tau}"
        )));
    }
    Ok(n as usize)
}

fn cache_key(u0: &KGState, final_time: f64, tau: f64) -> String {
    let g = u0.u.grid();
    let mut h = Sha256::new();
    h.update(MAGIC);
    h.update((g.dim() as u64).to_le_bytes());
    h.update((g.n_modes() as u64).to_le_bytes());
    h.update([g.dealias() as u8]);
    h.update(u0.c.to_le_bytes());
    h.update(u0.time.to_le_bytes());
    h.update(final_time.to_le_bytes());
    h.update(tau.to_le_bytes());
    h.update(format!("{:?}", CorrectionWeights::default()).as_bytes());
    for z in u0.u.coeffs() {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    hex::encode(&h.finalize()[..16])
}

fn encode(state: &KGState, tau: f64, final_time: f64) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * state.u.coeffs().len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(state.u.grid().n_modes() as u64).to_le_bytes());
    out.extend_from_slice(&state.c.to_le_bytes());
    out.extend_from_slice(&tau.to_le_bytes());
    out.extend_from_slice(&final_time.to_le_bytes());
    for z in state.u.coeffs() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"))
}

/// Parses a cache file for the run `(u0, T, τ)`. Any mismatch is `None`.
fn decode(bytes: &[u8], u0: &KGState, tau: f64, final_time: f64) -> Option<KGState> {
    let g = u0.u.grid();
    if bytes.len() != HEADER_LEN + 16 * g.len() || &bytes[..6] != MAGIC {
        return None;
    }
    let n = u64::from_le_bytes(bytes[6..14].try_into().ok()?);
    if n != g.n_modes() as u64
        || f64_at(bytes, 14) != u0.c
        || f64_at(bytes, 22) != tau
        || f64_at(bytes, 30) != final_time
    {
        return None;
    }
    let coeffs = bytes[HEADER_LEN..]
        .chunks_exact(16)
        .map(|p| Complex64::new(f64_at(p, 0), f64_at(p, 8)))
        .collect();
    let u = SpectralField::from_coeffs(g, coeffs).ok()?;
    Some(KGState {
        u,
        time: u0.time + final_time,
        c: u0.c,
    })
}

fn write_atomic(dir: &Path, path: &Path, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| KgError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| KgError::io(dir, e))?;
    tmp.write_all(bytes)
        .map_err(|e| KgError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| KgError::io(path, e.error))?;
    Ok(())
}

/// Default cache location: `$KGUA_CACHE_DIR`, else `<tmp>/kgua-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("KGUA_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("kgua-cache"))
}

/// UA_LRI2 from `u0` over `final_time` with step `tau`, served from `cache`
/// when a valid file exists. Unreadable or mismatched files are recomputed
/// and replaced.
pub fn reference_trajectory(
    u0: &KGState,
    final_time: f64,
    tau: f64,
    cache: Option<&Path>,
) -> Result<KGState> {
    let n = step_count(final_time, tau)?;
    let path = cache.map(|d| d.join(format!("{}.kgref", cache_key(u0, final_time, tau))));
    if let Some(p) = &path {
        if let Ok(bytes) = fs::read(p) {
            if let Some(s) = decode(&bytes, u0, tau, final_time) {
                return Ok(s);
            }
        }
    }
    let pre = PrecomputedSymbols::new(u0.u.grid(), u0.c, tau)?;
    let mut out = evolve_with(u0, StepperKind::UA_LRI2, &pre, n)?;
    out.time = u0.time + final_time;
    if let (Some(dir), Some(p)) = (cache, &path) {
        write_atomic(dir, p, &encode(&out, tau, final_time))?;
    }
    Ok(out)
}

/// [`reference_trajectory`] from `(z₀, ∂ₜz(0))`.
pub fn reference_from_data(
    z0: &SpectralField,
    zt0: &SpectralField,
    c: f64,
    final_time: f64,
    tau: f64,
    cache: Option<&Path>,
) -> Result<KGState> {
    reference_trajectory(&to_first_order(z0, zt0, c)?, final_time, tau, cache)
}

/// A reference together with its Richardson-style error certificate.
#[derive(Clone, Debug)]
pub struct CertifiedReference {
    /// The run at `τ_ref/2`, used for error measurement.
    pub state: KGState,
    /// The run at `τ_ref`.
    pub coarse: KGState,
    pub tau_ref: f64,
}

impl CertifiedReference {
    /// `‖u(τ_ref) − u(τ_ref/2)‖_{H^r}`, an upper estimate of the error of
    /// the finer run.
    pub fn error_estimate(&self, r: f64) -> f64 {
        (&self.state.u - &self.coarse.u).hr_norm(r)
    }

    /// Errors measured against the reference must exceed this (100× the
    /// estimate) to count.
    pub fn floor(&self, r: f64) -> f64 {
        100.0 * self.error_estimate(r)
    }
}

pub fn certified_reference(
    u0: &KGState,
    final_time: f64,
    tau_ref: f64,
    cache: Option<&Path>,
) -> Result<CertifiedReference> {
    let coarse = reference_trajectory(u0, final_time, tau_ref, cache)?;
    let state = reference_trajectory(u0, final_time, 0.5 * tau_ref, cache)?;
    Ok(CertifiedReference {
        state,
        coarse,
        tau_ref,
    })
}
