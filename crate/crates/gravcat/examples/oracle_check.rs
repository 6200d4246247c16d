//! Cross-check every closed form against its matrix-level oracle on a
//! random parameter grid — the same machinery behind `gravcat verify`.

use gravcat::verify::{run, GridSize};

fn main() -> Result<(), gravcat::GravcatError> {
    let report = run(GridSize::Small, None)?;
    for check in &report.checks {
        println!(
            "{:5} {:45} max deviation {:.3e} (tolerance {:.1e})",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.max_deviation,
            check.tolerance
        );
    }
    println!("\noverall: {}", if report.passed() { "all checks passed" } else { "FAILURES" });
    Ok(())
}
