//! The φ-functions near their removable singularity and on the imaginary
//! axis, where the schemes evaluate them.
//!
//! `cargo run --release --example phi_functions`

use kgua::phi::{osc_weight, phi1, phi2, psi2};
use num_complex::Complex64;

fn main() -> kgua::Result<()> {
    println!(
        "{:>10} {:>24} {:>24} {:>24}",
        "x", "φ₁(ix)", "φ₂(ix)", "Ψ₂(ix)"
    );
    for x in [0.0, 1e-10, 1e-4, 0.5, 1.0, 10.0, 1e4, 1e8] {
        let z = Complex64::new(0.0, x);
        let show = |w: Complex64| format!("{:+.3e}{:+.3e}i", w.re, w.im);
        println!(
            "{x:10.1e} {:>24} {:>24} {:>24}",
            show(phi1(z)),
            show(phi2(z)),
            show(psi2(z))
        );
    }
    // φ₁ = φ₂ + Ψ₂ holds through the series/closed-form switch
    let z = Complex64::new(0.3, 0.95);
    println!(
        "φ₁ − φ₂ − Ψ₂ at {z}: {:.1e}",
        (phi1(z) - phi2(z) - psi2(z)).norm()
    );
    println!(
        "osc weight (ℓ, m) = (2, 2) at x = c²t = 1e3: {:.4e}",
        osc_weight(2, 2, 1e3)?
    );
    Ok(())
}
