//! One-step error of UA_LRI1 and UA_LRI2 against the collocation oracle.
//!
//! `cargo run --release --example local_order [-- c ...]`

use kgua::integrators::{CorrectionWeights, PrecomputedSymbols, StepperKind};
use kgua::model::InitialDataSpec;
use kgua::oracle::duhamel_reference_step;
use kgua::spectral::Grid;
use std::sync::Arc;

fn main() -> kgua::Result<()> {
    let cs: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let cs = if cs.is_empty() { vec![1.0, 100.0] } else { cs };
    let grid = Arc::new(Grid::new(1, 64, true)?);
    for c in cs {
        let s0 = InitialDataSpec::smooth().initial_state(&grid, c)?;
        println!("c = {c}");
        println!(
            "{:>12} {:>12} {:>12} {:>12}",
            "tau", "UA_LRI1", "UA_LRI2", "UA_LRI2*"
        );
        for j in 2..=12 {
            let tau = 0.1 * 2f64.powi(-j);
            let exact = duhamel_reference_step(&s0.u, c, tau)?;
            let pre = PrecomputedSymbols::new(&grid, c, tau)?;
            let e1 = (&StepperKind::UA_LRI1.step(&s0, &pre)?.u - &exact).hr_norm(1.0);
            let e2 = (&StepperKind::UA_LRI2.step(&s0, &pre)?.u - &exact).hr_norm(1.0);
            let phi2 = pre.clone().with_weights(CorrectionWeights::Phi2)?;
            let e3 = (&StepperKind::UA_LRI2.step(&s0, &phi2)?.u - &exact).hr_norm(1.0);
            println!("{tau:12.4e} {e1:12.4e} {e2:12.4e} {e3:12.4e}");
        }
    }
    Ok(())
}
