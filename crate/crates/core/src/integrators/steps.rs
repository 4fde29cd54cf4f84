//! The five single-step maps. Pointwise products are formed on the grid's
//! product space (padded when dealiasing), where the spectral conjugate `ū`
//! is the pointwise conjugate of `u`, so it costs no transform.

use std::sync::Arc;

use num_complex::Complex64;

use super::symbols::{CorrectionWeights, PrecomputedSymbols};
use crate::error::{KgError, Result};
use crate::model::KGState;
use crate::spectral::{from_product_values, product_values, Grid, Multiplier, SpectralField};

type Values = Vec<Complex64>;

fn phys(f: &SpectralField) -> Values {
    product_values(f)
}

fn spec(grid: &Arc<Grid>, v: Values) -> SpectralField {
    from_product_values(grid, v)
}

fn conj_all(v: &[Complex64]) -> Values {
    v.iter().map(|z| z.conj()).collect()
}

fn zip2(a: &[Complex64], b: &[Complex64], f: impl Fn(Complex64, Complex64) -> Complex64) -> Values {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

fn finite(term: &'static str, f: SpectralField) -> Result<SpectralField> {
    if f.is_finite() {
        Ok(f)
    } else {
        Err(KgError::NonFinite(format!("term {term}")))
    }
}

/// `e^{iτc⟨∇⟩_c}(u − iτ(κ/8)·c⟨∇⟩_c⁻¹·B)`.
fn free_flight_with(
    u: &SpectralField,
    bracket: &SpectralField,
    pre: &PrecomputedSymbols,
) -> SpectralField {
    let mut out = u.clone();
    let scale = Complex64::new(0.0, -pre.tau * pre.coupling / 8.0);
    out.axpy(scale, &bracket.apply(&pre.a));
    out.apply(&pre.free)
}

/// The four-term φ₁ bracket shared by both KG schemes.
fn first_order_bracket(
    u: &SpectralField,
    pu: &[Complex64],
    pv: &[Complex64],
    pre: &PrecomputedSymbols,
) -> Result<SpectralField> {
    let g = u.grid();
    let ubar = u.conj();
    let t1 = finite(
        "φ₁(2ic²τ)u³",
        spec(g, pu.iter().map(|x| x * x * x).collect()),
    )?
    .scale(pre.phi1_2c);
    let b2 = phys(&ubar.apply(&pre.phi1_l));
    let t2 = finite(
        "3u²φ₁(−2iτL_c)ū",
        spec(g, zip2(pu, &b2, |x, y| 3.0 * x * x * y)),
    )?;
    let v2 = spec(g, pv.iter().map(|y| y * y).collect());
    let b3 = phys(&v2.apply(&pre.phi1_w));
    let t3 = finite(
        "3uφ₁(−2iτc⟨∇⟩_c)ū²",
        spec(g, zip2(pu, &b3, |x, y| 3.0 * x * y)),
    )?;
    let t4 = finite(
        "φ₁(−2iτ(c⟨∇⟩_c+c²))ū³",
        spec(g, pv.iter().map(|y| y * y * y).collect()).apply(&pre.phi1_wc),
    )?;
    Ok(&(&(&t1 + &t2) + &t3) + &t4)
}

pub fn step_ua_lri1(state: &KGState, pre: &PrecomputedSymbols) -> Result<KGState> {
    pre.check_for(state.c, state.u.grid())?;
    let u = &state.u;
    let pu = phys(u);
    let pv = conj_all(&pu);
    let bracket = first_order_bracket(u, &pu, &pv, pre)?;
    Ok(KGState {
        u: free_flight_with(u, &bracket, pre),
        time: state.time + pre.tau,
        c: state.c,
    })
}

/// 𝓜₁…𝓜₆ at `(τ, c², u)`.
pub fn compute_m_terms(u: &SpectralField, pre: &PrecomputedSymbols) -> Result<[SpectralField; 6]> {
    if **u.grid() != *pre.grid {
        return Err(KgError::GridMismatch);
    }
    let pu = phys(u);
    let pv = conj_all(&pu);
    m_terms(u.grid(), &pu, &pv, pre)
}

const M_NAMES: [&str; 6] = ["𝓜₁", "𝓜₂", "𝓜₃", "𝓜₄", "𝓜₅", "𝓜₆"];

fn m_terms(
    g: &Arc<Grid>,
    pu: &[Complex64],
    pv: &[Complex64],
    pre: &PrecomputedSymbols,
) -> Result<[SpectralField; 6]> {
    let prefactor = |j: usize, x: Complex64, y: Complex64| match j {
        0 | 1 => x * x,
        2 | 3 => y * y,
        _ => x * y,
    };
    let mut out: [SpectralField; 6] = std::array::from_fn(|_| SpectralField::zeros(g));
    for (j, slot) in out.iter_mut().enumerate() {
        let [al, be, ga, de] = pre.m_inner[j];
        let inner = zip2(pu, pv, |x, y| {
            al * x * x * x + be * x * x * y + ga * x * y * y + de * y * y * y
        });
        let inner = phys(&spec(g, inner).apply(&pre.a));
        let outer = pu
            .iter()
            .zip(pv)
            .zip(&inner)
            .map(|((&x, &y), &w)| prefactor(j, x, y) * w)
            .collect();
        let m = spec(g, outer).apply(&pre.a).scale(pre.m_outer[j]);
        *slot = finite(M_NAMES[j], m)?;
    }
    Ok(out)
}

/// `3Σ_{j≤4}𝓜ⱼ + 6𝓜₅ + 6𝓜₆` with the terms sharing an outer factor
/// (`u²`, `ū²`, `|u|²`) merged before transforming.
fn m_combination(
    g: &Arc<Grid>,
    pu: &[Complex64],
    pv: &[Complex64],
    pre: &PrecomputedSymbols,
) -> Result<SpectralField> {
    let mut total = vec![Complex64::new(0.0, 0.0); pu.len()];
    for group in 0..3 {
        let mut coef = [Complex64::new(0.0, 0.0); 4];
        for j in [2 * group, 2 * group + 1] {
            let w = if j < 4 { 3.0 } else { 6.0 };
            for (c, m) in coef.iter_mut().zip(pre.m_inner[j]) {
                *c += w * pre.m_outer[j] * m;
            }
        }
        let [al, be, ga, de] = coef;
        let inner = zip2(pu, pv, |x, y| {
            al * x * x * x + be * x * x * y + ga * x * y * y + de * y * y * y
        });
        let inner = phys(&spec(g, inner).apply(&pre.a));
        for (((t, &x), &y), &w) in total.iter_mut().zip(pu).zip(pv).zip(&inner) {
            let pref = match group {
                0 => x * x,
                1 => y * y,
                _ => x * y,
            };
            *t += pref * w;
        }
    }
    finite("𝓜 combination", spec(g, total).apply(&pre.a))
}

pub fn step_ua_lri2(state: &KGState, pre: &PrecomputedSymbols) -> Result<KGState> {
    pre.check_for(state.c, state.u.grid())?;
    let g = state.u.grid();
    let u = &state.u;
    let ubar = u.conj();
    let pu = phys(u);
    let pv = conj_all(&pu);
    let mut bracket = first_order_bracket(u, &pu, &pv, pre)?;

    let ue = u.apply(&pre.el_p);
    let pue = phys(&ue);
    let cube = |v: &[Complex64]| v.iter().map(|x| x * x * x).collect::<Values>();

    // W(2ic²τ)(e^{−iτL}(e^{iτL}u)³ − u³)
    let c1 = &spec(g, cube(&pue)).apply(&pre.el_m) - &spec(g, cube(&pu));
    bracket.axpy(pre.corr_2c, &finite("cubic correction", c1)?);

    // 3(e^{−iτL}[(e^{iτL}u)² e^{iτL}W ū] − u² W ū)
    let wv = ubar.apply(&pre.corr_l);
    let x = spec(g, zip2(&pue, &phys(&wv.apply(&pre.el_p)), |a, b| a * a * b)).apply(&pre.el_m);
    let y = spec(g, zip2(&pu, &phys(&wv), |a, b| a * a * b));
    bracket.axpy(Complex64::from(3.0), &finite("L_c correction", &x - &y)?);

    // 3(e^{−iτL}[(e^{iτL}u)·W e^{iτL}ū²] − u·W ū²)
    let v2 = spec(g, pv.iter().map(|y| y * y).collect());
    let wv2 = phys(&v2.apply(&pre.corr_w));
    let y = spec(g, zip2(&pu, &wv2, |a, b| a * b));
    let x = spec(
        g,
        zip2(
            &pue,
            &phys(&v2.apply(&pre.el_p).apply(&pre.corr_w)),
            |a, b| a * b,
        ),
    )
    .apply(&pre.el_m);
    bracket.axpy(Complex64::from(3.0), &finite("c⟨∇⟩_c correction", &x - &y)?);

    // 3(u·W e^{iτL}(e^{−iτL}ū)² − u·W ū²)
    let pvm = phys(&ubar.apply(&pre.el_m));
    let r = spec(g, pvm.iter().map(|y| y * y).collect())
        .apply(&pre.el_p)
        .apply(&pre.corr_w);
    let x = spec(g, zip2(&pu, &phys(&r), |a, b| a * b));
    bracket.axpy(Complex64::from(3.0), &finite("ū² correction", &x - &y)?);

    // e^{iτL}W(e^{−iτL}ū)³ − W ū³
    let x = spec(g, cube(&pvm)).apply(&pre.corr_wc).apply(&pre.el_p);
    let y = spec(g, cube(&pv)).apply(&pre.corr_wc);
    bracket.axpy(Complex64::from(1.0), &finite("ū³ correction", &x - &y)?);

    let mut next = free_flight_with(u, &bracket, pre);
    let k2 = pre.coupling * pre.coupling;
    next.axpy(Complex64::from(k2), &m_combination(g, &pu, &pv, pre)?);
    Ok(KGState {
        u: next,
        time: state.time + pre.tau,
        c: state.c,
    })
}

/// Exponential Euler on the first-order system, the non-uniform comparator:
/// `e^{iτc⟨∇⟩_c}(u − iτ(1/8)c⟨∇⟩_c⁻¹(u + ū)³)`.
pub fn step_exp_euler(state: &KGState, pre: &PrecomputedSymbols) -> Result<KGState> {
    pre.check_for(state.c, state.u.grid())?;
    let g = state.u.grid();
    let pu = phys(&state.u);
    let z3 = pu
        .iter()
        .map(|x| {
            let s = x + x.conj();
            s * s * s
        })
        .collect();
    let bracket = finite("(u+ū)³", spec(g, z3))?;
    Ok(KGState {
        u: free_flight_with(&state.u, &bracket, pre),
        time: state.time + pre.tau,
        c: state.c,
    })
}

fn nls_check(u: &SpectralField, pre: &PrecomputedSymbols) -> Result<()> {
    if **u.grid() != *pre.grid {
        return Err(KgError::GridMismatch);
    }
    Ok(())
}

/// `e^{−iτΔ/2}[u − iτ(3/8)u²φ₁(iτΔ)ū]`.
pub fn step_nls_lri1_with(u: &SpectralField, pre: &PrecomputedSymbols) -> Result<SpectralField> {
    nls_check(u, pre)?;
    let g = u.grid();
    let pu = phys(u);
    let b = phys(&u.conj().apply(&pre.nls_phi1));
    let n = finite("u²φ₁(iτΔ)ū", spec(g, zip2(&pu, &b, |x, y| x * x * y)))?;
    let mut out = u.clone();
    out.axpy(Complex64::new(0.0, -0.375 * pre.tau * pre.coupling), &n);
    Ok(out.apply(&pre.half_lap))
}

/// Second-order NLS step. With integrated weights:
/// `e^{−iτΔ/2}u − iτ(3/8){e^{−iτΔ/2}[u²φ₂ū] + (e^{−iτΔ/2}u)²e^{−iτΔ/2}Ψ₂ū} − (9τ²/128)|u|⁴u`;
/// with `Phi2` weights the braces read
/// `e^{−iτΔ/2}[u²(φ₁ − φ₂)ū + (e^{−iτΔ/2}u)²φ₂e^{−iτΔ/2}ū]`.
pub fn step_nls_lri2_with(u: &SpectralField, pre: &PrecomputedSymbols) -> Result<SpectralField> {
    nls_check(u, pre)?;
    let g = u.grid();
    let ubar = u.conj();
    let pu = phys(u);
    let ph = phys(&u.apply(&pre.half_lap));
    let (near, far, outer_far) = match pre.weights {
        CorrectionWeights::Integrated => (pre.nls_phi2.clone(), &pre.nls_psi2, false),
        CorrectionWeights::Phi2 => (
            Multiplier::from_values(zip2(
                pre.nls_phi1.values(),
                pre.nls_phi2.values(),
                |a, b| a - b,
            )),
            &pre.nls_phi2,
            true,
        ),
    };
    let a = spec(g, zip2(&pu, &phys(&ubar.apply(&near)), |x, y| x * x * y));
    let b = spec(
        g,
        zip2(&ph, &phys(&ubar.apply(far).apply(&pre.half_lap)), |x, y| {
            x * x * y
        }),
    );
    let (inside, outside) = if outer_far {
        (&a + &b, SpectralField::zeros(g))
    } else {
        (a, b)
    };
    let k = Complex64::new(0.0, -0.375 * pre.tau * pre.coupling);
    let mut out = u.clone();
    out.axpy(k, &finite("NLS cubic bracket", inside)?);
    let mut out = out.apply(&pre.half_lap);
    out.axpy(k, &finite("NLS twisted bracket", outside)?);
    let quintic = spec(
        g,
        pu.iter().map(|x| x * x * x * x.conj() * x.conj()).collect(),
    );
    let q = -9.0 * pre.tau * pre.tau / 128.0 * pre.coupling * pre.coupling;
    out.axpy(Complex64::from(q), &finite("|u|⁴u", quintic)?);
    Ok(out)
}

pub fn step_nls_lri1(u: &SpectralField, tau: f64) -> Result<SpectralField> {
    step_nls_lri1_with(u, &PrecomputedSymbols::new(u.grid(), 1.0, tau)?)
}

pub fn step_nls_lri2(u: &SpectralField, tau: f64) -> Result<SpectralField> {
    step_nls_lri2_with(u, &PrecomputedSymbols::new(u.grid(), 1.0, tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::{evolve, StepperKind};
    use crate::model::InitialDataSpec;
    use crate::spectral::make_grid;

    fn grid() -> Arc<Grid> {
        Arc::new(Grid::new(1, 32, true).unwrap())
    }

    fn smooth(c: f64) -> KGState {
        InitialDataSpec::smooth().initial_state(&grid(), c).unwrap()
    }

    fn constant(a: Complex64) -> SpectralField {
        SpectralField::mode(&make_grid(1, 8).unwrap(), [0, 0], a).unwrap()
    }

    #[test]
    fn zero_is_fixed() {
        let g = grid();
        for kind in StepperKind::ALL {
            let s = KGState::new(SpectralField::zeros(&g), 3.0).unwrap();
            let c = if kind.is_nls() { 1.0 } else { 3.0 };
            let pre = PrecomputedSymbols::new(&g, c, 0.01).unwrap();
            let out = kind.step(&s, &pre).unwrap();
            assert_eq!(out.u.max_abs(), 0.0, "{kind}");
        }
    }

    #[test]
    fn no_coupling_is_free_flight() {
        let s = smooth(5.0);
        let pre = PrecomputedSymbols::new(s.u.grid(), 5.0, 0.03)
            .unwrap()
            .with_coupling(0.0);
        let free = s.u.apply(pre.free_flow());
        for kind in [
            StepperKind::UA_LRI1,
            StepperKind::UA_LRI2,
            StepperKind::EXP_EULER,
        ] {
            let out = kind.step(&s, &pre).unwrap();
            assert!((&out.u - &free).hr_norm(1.0) < 1e-14, "{kind}");
        }
    }

    #[test]
    fn merged_m_terms_match_the_separate_ones() {
        for c in [1.0, 30.0] {
            let s = smooth(c);
            let pre = PrecomputedSymbols::new(s.u.grid(), c, 0.02).unwrap();
            let m = compute_m_terms(&s.u, &pre).unwrap();
            let mut want = SpectralField::zeros(s.u.grid());
            for (j, term) in m.iter().enumerate() {
                want.axpy(Complex64::from(if j < 4 { 3.0 } else { 6.0 }), term);
            }
            let pu = phys(&s.u);
            let pv = conj_all(&pu);
            let got = m_combination(s.u.grid(), &pu, &pv, &pre).unwrap();
            assert!(
                (&got - &want).hr_norm(1.0) <= 1e-13 * want.hr_norm(1.0).max(1e-300),
                "c = {c}"
            );
        }
    }

    #[test]
    fn m_terms_are_second_order_small() {
        let s = smooth(2.0);
        let norm = |tau: f64| {
            let pre = PrecomputedSymbols::new(s.u.grid(), 2.0, tau).unwrap();
            let m = compute_m_terms(&s.u, &pre).unwrap();
            m.iter().map(|t| t.hr_norm(0.0)).sum::<f64>()
        };
        let ratio = norm(1e-3) / norm(5e-4);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn second_order_differs_from_first_at_second_order() {
        for c in [1.0, 50.0] {
            let s = smooth(c);
            let diff = |tau: f64| {
                let pre = PrecomputedSymbols::new(s.u.grid(), c, tau).unwrap();
                let a = step_ua_lri1(&s, &pre).unwrap();
                let b = step_ua_lri2(&s, &pre).unwrap();
                (&a.u - &b.u).hr_norm(1.0)
            };
            let ratio = diff(1e-4) / diff(5e-5);
            assert!((3.5..4.5).contains(&ratio), "c = {c}: {ratio}");
        }
    }

    #[test]
    fn nls_first_order_on_a_constant() {
        let a = Complex64::new(0.6, -0.3);
        let tau = 0.1;
        let u1 = step_nls_lri1(&constant(a), tau).unwrap().coeff([0, 0]);
        let want = a - Complex64::new(0.0, tau * 0.375) * a * a * a.conj();
        assert!((u1 - want).norm() < 1e-15);
    }

    #[test]
    fn nls_second_order_on_a_constant() {
        let a = Complex64::new(0.6, -0.3);
        let tau = 0.1;
        let m2 = a.norm_sqr();
        let want =
            a - Complex64::new(0.0, tau * 0.375) * m2 * a - 9.0 * tau * tau / 128.0 * m2 * m2 * a;
        for w in [CorrectionWeights::Integrated, CorrectionWeights::Phi2] {
            let u = constant(a);
            let pre = PrecomputedSymbols::new(u.grid(), 1.0, tau)
                .unwrap()
                .with_weights(w)
                .unwrap();
            let got = step_nls_lri2_with(&u, &pre).unwrap().coeff([0, 0]);
            assert!((got - want).norm() < 1e-15, "{w:?}");
        }
    }

    #[test]
    fn evolve_composes() {
        let s = smooth(4.0);
        let five = evolve(&s, StepperKind::UA_LRI2, 0.01, 5).unwrap();
        let three = evolve(&s, StepperKind::UA_LRI2, 0.01, 3).unwrap();
        let two_more = evolve(&three, StepperKind::UA_LRI2, 0.01, 2).unwrap();
        assert_eq!(five.u, two_more.u);
        assert!((five.time - 0.05).abs() < 1e-15);
        assert_eq!(evolve(&s, StepperKind::UA_LRI1, 0.01, 0).unwrap().u, s.u);
    }

    #[test]
    fn step_errors_carry_the_index() {
        let s = smooth(4.0);
        let pre = PrecomputedSymbols::new(s.u.grid(), 3.0, 0.01).unwrap();
        match crate::integrators::evolve_with(&s, StepperKind::UA_LRI1, &pre, 3) {
            Err(KgError::Step { step: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exp_euler_is_first_order_at_c_one() {
        let s = smooth(1.0);
        let at = |tau: f64| {
            evolve(
                &s,
                StepperKind::EXP_EULER,
                tau,
                (0.25 / tau).round() as usize,
            )
            .unwrap()
            .u
        };
        let fine = evolve(&s, StepperKind::UA_LRI2, 1.0 / 4096.0, 1024)
            .unwrap()
            .u;
        let e1 = (&at(1.0 / 64.0) - &fine).hr_norm(1.0);
        let e2 = (&at(1.0 / 128.0) - &fine).hr_norm(1.0);
        let slope = (e1 / e2).log2();
        assert!((0.85..1.15).contains(&slope), "{slope}");
    }
}
