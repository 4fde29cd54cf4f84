//! The oscillatory integral by direct quadrature against its four-term
//! φ₁ expansion, whose gap shrinks like t².
//!
//! `cargo run --release --example osc_integral`

use std::sync::Arc;

use kgua::model::InitialDataSpec;
use kgua::oracle::{osc_integral_oracle, osc_nodes_rule};
use kgua::spectral::Grid;

fn main() -> kgua::Result<()> {
    let grid = Arc::new(Grid::new(1, 64, true)?);
    for c in [1.0, 100.0] {
        let v = InitialDataSpec::smooth().initial_state(&grid, c)?.u;
        for j in [6, 8, 10] {
            let t = 2f64.powi(-j);
            let n = osc_nodes_rule(c, t);
            let coarse = osc_integral_oracle(&v, t, c, n)?;
            let fine = osc_integral_oracle(&v, t, c, 2 * n)?;
            println!(
                "c = {c}, t = 2^-{j}: {n} nodes, ‖I‖_H¹ = {:.6e}, node doubling changes it by {:.1e}",
                fine.hr_norm(1.0),
                (&coarse - &fine).hr_norm(1.0)
            );
        }
    }
    Ok(())
}
