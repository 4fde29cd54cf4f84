//! Global convergence of the NLS-limit integrators against a fine-step
//! NLS_LRI2 run, for both second-order weight variants.
//!
//! `cargo run --release --example nls_limit_schemes`

use std::sync::Arc;

use kgua::integrators::{evolve_with, CorrectionWeights, PrecomputedSymbols, StepperKind};
use kgua::model::{InitialDataSpec, KGState};
use kgua::spectral::Grid;

fn run(
    s0: &KGState,
    kind: StepperKind,
    tau: f64,
    t: f64,
    weights: CorrectionWeights,
) -> kgua::Result<KGState> {
    let pre = PrecomputedSymbols::new(s0.u.grid(), 1.0, tau)?.with_weights(weights)?;
    evolve_with(s0, kind, &pre, (t / tau).round() as usize)
}

fn main() -> kgua::Result<()> {
    let grid = Arc::new(Grid::new(1, 64, true)?);
    let u0 = InitialDataSpec::smooth().limit_state(&grid)?;
    let s0 = KGState::new(u0, 1.0)?;
    let t = 1.0;
    let reference = run(
        &s0,
        StepperKind::NLS_LRI2,
        2f64.powi(-16),
        t,
        CorrectionWeights::Integrated,
    )?;
    println!(
        "{:>10} {:>12} {:>12} {:>12}",
        "tau", "NLS_LRI1", "NLS_LRI2", "NLS_LRI2*"
    );
    for j in 3..=10 {
        let tau = 2f64.powi(-j);
        let err = |k, w| -> kgua::Result<f64> {
            Ok((&run(&s0, k, tau, t, w)?.u - &reference.u).hr_norm(1.0))
        };
        println!(
            "{tau:10.3e} {:12.4e} {:12.4e} {:12.4e}",
            err(StepperKind::NLS_LRI1, CorrectionWeights::Integrated)?,
            err(StepperKind::NLS_LRI2, CorrectionWeights::Integrated)?,
            err(StepperKind::NLS_LRI2, CorrectionWeights::Phi2)?,
        );
    }
    Ok(())
}
