//! Evolve smooth data with one scheme and print `‖z(t)‖` along the way.
//!
//! `cargo run --release --example single_run -- [SCHEME] [C] [TAU]`

use std::sync::Arc;

use kgua::integrators::{evolve_with, PrecomputedSymbols, StepperKind};
use kgua::model::InitialDataSpec;
use kgua::spectral::Grid;

fn main() -> kgua::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: StepperKind = args
        .first()
        .map_or(Ok(StepperKind::UA_LRI2), |s| s.parse())?;
    let c: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100.0);
    let tau: f64 = args
        .get(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0 / 64.0);
    let grid = Arc::new(Grid::new(1, 128, true)?);
    let pre = PrecomputedSymbols::new(&grid, c, tau)?;
    let mut s = InitialDataSpec::smooth().initial_state(&grid, c)?;
    println!("{kind}, c = {c}, τ = {tau}");
    for _ in 0..8 {
        s = evolve_with(&s, kind, &pre, (0.125 / tau).round() as usize)?;
        println!(
            "t = {:.3}  ‖z‖_L² = {:.10}  ‖u‖_H¹ = {:.10}",
            s.time,
            s.z().hr_norm(0.0),
            s.u.hr_norm(1.0)
        );
    }
    Ok(())
}
