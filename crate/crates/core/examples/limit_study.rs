//! Distance between the Klein-Gordon schemes and their NLS-limit
//! counterparts (phase-corrected) as `c` grows.
//!
//! `cargo run --release --example limit_study`

use kgua::harness::{limit_slope, run_limit_study, Study, StudySpec};

fn main() -> kgua::Result<()> {
    let mut spec = StudySpec::default_sweep(Study::NlsLimit);
    spec.c_values = (2..=9).map(|j| 2f64.powi(j)).collect();
    spec.tau_values = vec![1e-3];
    spec.final_time = 0.5;
    let resolved = spec.resolve()?;
    let out = run_limit_study(&resolved)?;
    for r in &out.records {
        println!("{} c = {:>4}: {:.4e}", r.scheme, r.c, r.error);
    }
    for &kind in &resolved.spec.schemes {
        let fit = limit_slope(&out.records, kind)?;
        println!("{kind}: error ~ c^{:.3}", fit.slope);
    }
    Ok(())
}
