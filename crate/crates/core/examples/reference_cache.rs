//! Certified fine-step references and the on-disk cache.
//!
//! `cargo run --release --example reference_cache`

use std::sync::Arc;
use std::time::Instant;

use kgua::model::InitialDataSpec;
use kgua::oracle::certified_reference;
use kgua::spectral::Grid;

fn main() -> kgua::Result<()> {
    let dir = std::env::temp_dir().join("kgua-example-cache");
    let grid = Arc::new(Grid::new(1, 64, true)?);
    let u0 = InitialDataSpec::smooth().initial_state(&grid, 10.0)?;
    for pass in ["computed", "cached"] {
        let start = Instant::now();
        let cert = certified_reference(&u0, 0.5, 1.0 / 2048.0, Some(&dir))?;
        println!(
            "{pass}: {:.2}s, estimate {:.2e}, errors below {:.2e} are not trusted",
            start.elapsed().as_secs_f64(),
            cert.error_estimate(1.0),
            cert.floor(1.0)
        );
    }
    println!("cache directory: {}", dir.display());
    Ok(())
}
