//! A τ-sweep at several `c` against certified references: per-c slopes,
//! the max/min error ratio across `c`, and the CSV.
//!
//! `cargo run --release --example tau_sweep -- [OUT.csv]`

use kgua::harness::{curve_slope, run_study, uniformity_ratios, write_csv, Study, StudySpec};
use kgua::oracle::default_cache_dir;

fn main() -> kgua::Result<()> {
    let mut spec = StudySpec::default_sweep(Study::TauSweep);
    spec.n = 64;
    spec.c_values = vec![1.0, 10.0, 100.0];
    spec.tau_values = (4..=8).map(|j| 0.5 * 2f64.powi(-j)).collect();
    let resolved = spec.resolve()?;
    let out = run_study(&resolved, Some(&default_cache_dir()))?;
    for &kind in &resolved.spec.schemes {
        for &c in &resolved.spec.c_values {
            let fit = curve_slope(&out.records, kind, c)?;
            println!(
                "{kind} c = {c:>5}: slope {:.3}, constant {:.3e}",
                fit.slope,
                fit.constant()
            );
        }
        let worst = uniformity_ratios(&out.records, kind)
            .iter()
            .map(|r| r.1)
            .fold(0.0, f64::max);
        println!("{kind}: worst max/min ratio across c = {worst:.2}");
    }
    if let Some(path) = std::env::args().nth(1) {
        write_csv(&out.records, path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
