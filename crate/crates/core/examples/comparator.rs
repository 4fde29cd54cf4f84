//! Exponential Euler next to the uniformly accurate schemes at small and
//! large `c`.
//!
//! `cargo run --release --example comparator -- [C ...]`

use kgua::harness::{run_study, uniformity_ratios, Study, StudySpec};
use kgua::integrators::StepperKind;
use kgua::oracle::default_cache_dir;

fn main() -> kgua::Result<()> {
    let cs: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut spec = StudySpec::default_sweep(Study::Comparator);
    spec.schemes = vec![StepperKind::UA_LRI1, StepperKind::UA_LRI2];
    spec.c_values = if cs.is_empty() { vec![1.0, 1000.0] } else { cs };
    let resolved = spec.resolve()?;
    let out = run_study(&resolved, Some(&default_cache_dir()))?;
    for &kind in &resolved.spec.schemes {
        let ratios: Vec<String> = uniformity_ratios(&out.records, kind)
            .iter()
            .map(|(t, r)| format!("{t:.1e}:{r:.1}"))
            .collect();
        println!("{kind:>9} max/min across c per τ: {}", ratios.join(" "));
    }
    Ok(())
}
