//! Smooth and rough initial data, their first-order form, and how rough
//! data's norms grow with the grid.
//!
//! `cargo run --release --example initial_data [-- THETA]`

use std::sync::Arc;

use kgua::model::{make_rough_data, make_smooth_data, reconstruct_z, InitialDataSpec};
use kgua::spectral::Grid;

fn main() -> kgua::Result<()> {
    let theta: f64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1.0);
    println!("rough data θ = {theta}, seed 0");
    println!("{:>6} {:>12} {:>12} {:>12}", "N", "L²", "H¹", "H²");
    for n in [32, 64, 128, 256, 512] {
        let g = Arc::new(Grid::new(1, n, false)?);
        let z = make_rough_data(&InitialDataSpec::rough(theta, 0), &g)?;
        println!(
            "{n:>6} {:12.4e} {:12.4e} {:12.4e}",
            z.hr_norm(0.0),
            z.hr_norm(1.0),
            z.hr_norm(2.0)
        );
    }
    let g = Arc::new(Grid::new(1, 64, true)?);
    let data = make_smooth_data(&g)?;
    for c in [1.0, 100.0] {
        let s = data.initial_state(c)?;
        let gap = (&reconstruct_z(&s) - &data.z0).hr_norm(1.0);
        let limit = (&s.u - &data.limit_u0()).hr_norm(1.0);
        println!("smooth, c = {c}: |z₀ − Re u₀| = {gap:.1e}, |u₀ − u*(0)|_H¹ = {limit:.3e}");
    }
    Ok(())
}
