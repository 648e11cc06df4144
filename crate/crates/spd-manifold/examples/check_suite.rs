//! Running the seeded verification suite from library code.
//!
//! `run_check` exercises every numerical claim the crate makes (metric
//! invariance, exponential bijections, convergence orders, geodesic
//! residuals, sampler membership) and returns a structured report. The
//! same suite backs `spdm check`. Run with `cargo run --example check_suite`.

use spd_manifold::{run_check, CheckConfig, Field, Result};

fn main() -> Result<()> {
    let cfg = CheckConfig {
        dim: 3,
        trials: 25,
        seed: 12,
        field: Field::Complex,
        mutation: None,
    };
    let report = run_check(&cfg)?;

    for p in &report.properties {
        println!(
            "{:>6} {:45} measured {:11.4e} bound {:9.2e}",
            if p.pass { "ok" } else { "FAIL" },
            p.name,
            p.measured,
            p.bound,
        );
    }
    println!(
        "\n{} properties, all pass: {}",
        report.properties.len(),
        report.all_pass
    );
    Ok(())
}
