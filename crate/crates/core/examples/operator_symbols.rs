//! `c⟨∇⟩_c` and `L_c = c⟨∇⟩_c − c²` on a grid: `L_c` stays within
//! `[0, k²/2]` and tends to `k²/2` as `c` grows.
//!
//! `cargo run --release --example operator_symbols`

use kgua::integrators::PrecomputedSymbols;
use kgua::spectral::{make_grid, sym_cnabla, sym_lc};

fn main() -> kgua::Result<()> {
    for c in [1.0, 10.0, 1e3, 1e8] {
        let (lc, w) = (sym_lc(c), sym_cnabla(c));
        print!("c = {c:>7.0e}:");
        for k in [1i64, 8, 64] {
            let l = lc.eval([k, 0]).re;
            print!(
                "  k={k}: L_c = {l:.6e} (k²/2 − L_c = {:.2e})",
                0.5 * (k * k) as f64 - l
            );
        }
        println!("  c⟨∇⟩_c(1) = {:.6e}", w.eval([1, 0]).re);
    }
    let grid = make_grid(1, 64)?;
    let pre = PrecomputedSymbols::new(&grid, 100.0, 1e-3)?;
    let worst = pre
        .free_flow()
        .values()
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    println!("free flow at c = 100, τ = 1e-3: max ||e^{{iτω}}| − 1| = {worst:.1e}");
    Ok(())
}
