//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported, not hidden; the process exits 0 unless
//! `KGUA_ACCEPTANCE_STRICT=1`, in which case any FAIL makes it exit 1.
//! References are cached under `$KGUA_CACHE_DIR` (or the temp dir).

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kgua::harness::{
    curve_slope, fit_loglog, limit_slope, run_limit_study, run_tau_sweep, uniformity_ratios,
    ConvergenceRecord, Study, StudySpec,
};
use kgua::integrators::{PrecomputedSymbols, StepperKind};
use kgua::model::InitialDataSpec;
use kgua::oracle::{
    default_cache_dir, duhamel_reference_step, osc_integral_oracle, osc_nodes_rule,
};
use kgua::phi::{phi1, phi2, psi2};
use kgua::spectral::{
    cubic_product, lc_value, quadratic_product, sym_cnabla, sym_lc, Grid, SpectralField, Symbol,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> kgua::Result<Verdict>;

fn run(id: usize, title: &str, budget: Duration, check: Check) -> bool {
    let start = Instant::now();
    let v = check().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
    let took = start.elapsed();
    let in_time = took < budget;
    let pass = v.pass && in_time;
    println!(
        "criterion {id} {}: {title} | {} | {:.1}s of {}s",
        if pass { "PASS" } else { "FAIL" },
        v.detail,
        took.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

fn c1() -> kgua::Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let r = 10f64.powf(rng.random_range(-12.0..2.0));
        let z = Complex64::from_polar(
            r,
            rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        );
        let (p1, p2, q2) = (phi1(z), phi2(z), psi2(z));
        let ez = z.exp();
        // each identity is measured relative to the size of its terms
        let e1 = (z * p1 + one - ez).norm() / ((z * p1).norm() + 1.0);
        let e2 = (z * p2 + one - p1).norm() / ((z * p2).norm() + 1.0);
        let e3 = (z * z * q2 - (ez * (z - one) + one)).norm() / ((ez * (z - one)).norm() + 1.0);
        worst = worst.max(e1).max(e2).max(e3);
    }
    let mut bound = 0.0f64;
    for j in 0..=2_000_000 {
        let x = -1e6 + j as f64;
        bound = bound.max(phi1(Complex64::new(0.0, x)).norm());
        let y = rng.random_range(-1e6..1e6);
        bound = bound.max(phi1(Complex64::new(0.0, y)).norm());
    }
    Ok(verdict(
        worst <= 1e-12 && bound <= 1.0,
        format!("worst relative identity error {worst:.2e}, max |φ₁(ix)| = {bound:.17}"),
    ))
}

/// `c√(k²+c²) − c²` to 30 digits by integer square root.
fn lc_exact(c: u64, k2: u64) -> f64 {
    let scale = BigUint::from(10u32).pow(30);
    let c = BigUint::from(c);
    let radicand = &c * &c * (BigUint::from(k2) + &c * &c) * &scale * &scale;
    let diff = radicand.sqrt() - &c * &c * &scale;
    let digits: f64 = diff.to_string().parse().expect("decimal");
    digits / 1e30
}

fn c2() -> kgua::Result<Verdict> {
    let mut worst = 0.0f64;
    let mut bounds = true;
    for c in [1u64, 1_000, 1_000_000, 100_000_000] {
        let sym = sym_lc(c as f64);
        for k in 0..=128i64 {
            let k2 = (k * k) as u64;
            let got = sym.eval([k, 0]).re;
            let exact = lc_exact(c, k2);
            worst = worst.max((got - exact).abs() / exact.max(1.0));
            bounds &= got >= 0.0 && got <= k2 as f64 / 2.0;
            bounds &= got == lc_value(c as f64, k2 as f64);
        }
    }
    Ok(verdict(
        worst <= 1e-6 && bounds,
        format!("worst scaled error {worst:.2e}, 0 ≤ L_c ≤ k²/2: {bounds}"),
    ))
}

/// The four-term expansion of the oscillatory integral.
fn osc_expansion(v: &SpectralField, t: f64, c: f64) -> kgua::Result<SpectralField> {
    let g = v.grid();
    let i = Complex64::i();
    let vb = v.conj();
    let apply = |s: Symbol, f: &SpectralField| -> kgua::Result<SpectralField> {
        Ok(f.apply(&s.tabulate(g)?))
    };
    let lc = sym_lc(c);
    let om = sym_cnabla(c);
    let c2 = c * c;
    let w1 = apply(lc.map(move |l| phi1(-2.0 * i * t * l)), &vb)?;
    let w2 = apply(
        om.map(move |w| phi1(-2.0 * i * t * w)),
        &quadratic_product(&vb, &vb)?,
    )?;
    let w3 = apply(
        om.map(move |w| phi1(-2.0 * i * t * (w + c2))),
        &cubic_product(&vb, &vb, &vb)?,
    )?;
    let mut out = cubic_product(v, v, v)?.scale(phi1(Complex64::new(0.0, 2.0 * c2 * t)) * t);
    out.axpy(Complex64::from(3.0 * t), &cubic_product(v, v, &w1)?);
    out.axpy(Complex64::from(3.0 * t), &quadratic_product(v, &w2)?);
    out.axpy(Complex64::from(t), &w3);
    Ok(out)
}

fn c3() -> kgua::Result<Verdict> {
    let grid = Arc::new(Grid::new(1, 64, true)?);
    let ts: Vec<f64> = (6..=12).map(|j| 2f64.powi(-j)).collect();
    let mut ok = true;
    let mut consts = Vec::new();
    let mut detail = Vec::new();
    for c in [1.0, 10.0, 100.0] {
        let v = InitialDataSpec::smooth().initial_state(&grid, c)?.u;
        let mut errs = Vec::new();
        for &t in &ts {
            let exact = osc_integral_oracle(&v, t, c, osc_nodes_rule(c, t))?;
            errs.push((&exact - &osc_expansion(&v, t, c)?).hr_norm(1.0));
        }
        let fit = fit_loglog(&ts, &errs, 0.0)?;
        ok &= within(fit.slope, 1.8, 2.2);
        consts.push(fit.constant());
        detail.push(format!(
            "c={c}: slope {:.3} C {:.2e}",
            fit.slope,
            fit.constant()
        ));
    }
    let spread = consts.iter().cloned().fold(0.0, f64::max)
        / consts.iter().cloned().fold(f64::INFINITY, f64::min);
    ok &= spread <= 10.0;
    Ok(verdict(
        ok,
        format!("{}; constant spread {spread:.2}", detail.join(", ")),
    ))
}

fn c4() -> kgua::Result<Verdict> {
    let grid = Arc::new(Grid::new(1, 64, true)?);
    let mut ok = true;
    let mut detail = Vec::new();
    for c in [1.0, 100.0] {
        let s0 = InitialDataSpec::smooth().initial_state(&grid, c)?;
        for (kind, range, lo, hi) in [
            (StepperKind::UA_LRI1, 8..=14, 1.8, 2.2),
            (StepperKind::UA_LRI2, 6..=12, 2.7, 3.3),
        ] {
            let taus: Vec<f64> = range.map(|j| 0.1 * 2f64.powi(-j)).collect();
            let mut errs = Vec::new();
            for &tau in &taus {
                let exact = duhamel_reference_step(&s0.u, c, tau)?;
                let pre = PrecomputedSymbols::new(&grid, c, tau)?;
                errs.push((&kind.step(&s0, &pre)?.u - &exact).hr_norm(1.0));
            }
            let slope = fit_loglog(&taus, &errs, 0.0)?.slope;
            ok &= within(slope, lo, hi);
            detail.push(format!("{kind} c={c}: {slope:.3}"));
        }
    }
    Ok(verdict(ok, detail.join(", ")))
}

fn slope_report(
    records: &[ConvergenceRecord],
    kind: StepperKind,
    cs: &[f64],
    ok_slope: impl Fn(f64) -> bool,
) -> kgua::Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for &c in cs {
        let s = curve_slope(records, kind, c)?.slope;
        ok &= ok_slope(s);
        parts.push(format!("c={c}: {s:.3}"));
    }
    Ok((ok, format!("{kind} slopes {}", parts.join(" "))))
}

fn max_ratio(records: &[ConvergenceRecord], kind: StepperKind) -> f64 {
    uniformity_ratios(records, kind)
        .iter()
        .map(|r| r.1)
        .fold(0.0, f64::max)
}

fn c5() -> kgua::Result<Verdict> {
    let spec = StudySpec::default_sweep(Study::TauSweep).resolve()?;
    let cache = default_cache_dir();
    let out = run_tau_sweep(&spec, Some(&cache))?;
    let cs = &spec.spec.c_values;
    let (ok1, d1) = slope_report(&out.records, StepperKind::UA_LRI1, cs, |s| {
        within(s, 0.85, 1.15)
    })?;
    let (ok2, d2) = slope_report(&out.records, StepperKind::UA_LRI2, cs, |s| {
        within(s, 1.8, 2.2)
    })?;
    let (r1, r2) = (
        max_ratio(&out.records, StepperKind::UA_LRI1),
        max_ratio(&out.records, StepperKind::UA_LRI2),
    );
    Ok(verdict(
        ok1 && ok2 && r1 <= 10.0 && r2 <= 10.0,
        format!("{d1}; {d2}; max error ratio across c {r1:.2} / {r2:.2}"),
    ))
}

fn c6() -> kgua::Result<Verdict> {
    let cache = default_cache_dir();
    let mut ok = true;
    let mut detail = Vec::new();
    for (kind, theta, min) in [
        (StepperKind::UA_LRI1, 1.0, 0.8),
        (StepperKind::UA_LRI2, 2.0, 1.6),
    ] {
        let mut s = StudySpec::default_sweep(Study::TauSweep);
        s.schemes = vec![kind];
        s.c_values = vec![1.0, 100.0];
        s.data = InitialDataSpec::rough(theta, 0);
        let spec = s.resolve()?;
        let out = run_tau_sweep(&spec, Some(&cache))?;
        let (pass, d) = slope_report(&out.records, kind, &spec.spec.c_values, |x| x >= min)?;
        ok &= pass;
        detail.push(format!("θ={theta} {d}"));
    }
    Ok(verdict(ok, detail.join("; ")))
}

fn c7() -> kgua::Result<Verdict> {
    let mut s = StudySpec::default_sweep(Study::NlsLimit);
    s.c_values = (2..=9).map(|j| 2f64.powi(j)).collect();
    s.tau_values = vec![1e-3];
    s.final_time = 0.5;
    let out = run_limit_study(&s.resolve()?)?;
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in [StepperKind::UA_LRI1, StepperKind::UA_LRI2] {
        let slope = limit_slope(&out.records, kind)?.slope;
        ok &= within(slope, -1.3, -0.7);
        detail.push(format!("{kind}: {slope:.3}"));
    }
    Ok(verdict(
        ok,
        format!("error-vs-c slopes {}", detail.join(", ")),
    ))
}

fn c8() -> kgua::Result<Verdict> {
    let mut s = StudySpec::default_sweep(Study::Comparator);
    s.schemes = vec![StepperKind::UA_LRI1, StepperKind::UA_LRI2];
    s.c_values = vec![1.0, 1000.0];
    let spec = s.resolve()?;
    let out = run_tau_sweep(&spec, Some(&default_cache_dir()))?;
    let ratios = |k| uniformity_ratios(&out.records, k);
    let (ee, u1, u2) = (
        ratios(StepperKind::EXP_EULER),
        ratios(StepperKind::UA_LRI1),
        ratios(StepperKind::UA_LRI2),
    );
    let witness = ee
        .iter()
        .zip(&u1)
        .zip(&u2)
        .find(|((e, a), b)| e.1 > 10.0 && a.1 <= 10.0 && b.1 <= 10.0)
        .map(|((e, _), _)| e.0);
    let worst_ee = ee.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(verdict(
        witness.is_some(),
        format!(
            "EXP_EULER max ratio {worst_ee:.2}, UA ratios ≤ {:.2}; witness τ {witness:?}",
            max_ratio(&out.records, StepperKind::UA_LRI1)
                .max(max_ratio(&out.records, StepperKind::UA_LRI2))
        ),
    ))
}

fn main() {
    let secs = Duration::from_secs;
    let checks: [(&str, Duration, Check); 8] = [
        ("φ-calculus identities", secs(5), c1),
        ("symbol correctness", secs(5), c2),
        ("oscillatory-integral expansion", secs(60), c3),
        ("local order", secs(120), c4),
        ("global uniform order", secs(600), c5),
        ("rough-data convergence", secs(600), c6),
        ("NLS-limit asymptotics", secs(600), c7),
        ("comparator non-uniformity", secs(300), c8),
    ];
    let mut all = true;
    for (i, (title, budget, check)) in checks.into_iter().enumerate() {
        all &= run(i + 1, title, budget, check);
    }
    println!(
        "acceptance: {}",
        if all {
            "all criteria pass"
        } else {
            "some criteria fail"
        }
    );
    if !all && std::env::var("KGUA_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
