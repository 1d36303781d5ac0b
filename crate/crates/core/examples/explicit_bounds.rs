// Certified bracketing of π(n) by n/(ln n − 1) and n/(ln n − 1.1).

use pidiv::analytic_bounds::Bounds;
use pidiv::pi_engine::PiEngine;

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    let bounds = Bounds::default();
    for n in [60_184, 1_000_000, 123_456_789] {
        let pi = engine.pi_exact(n)?.pi;
        let check = bounds.check_dusart(n, pi)?;
        println!(
            "{:.3} < pi({n}) = {pi} < {:.3}  holds: {}",
            check.lower.midpoint_f64(),
            check.upper.midpoint_f64(),
            check.holds
        );
        // the older, wider pair always contains the tighter one
        let rs = bounds.rosser_schoenfeld_bounds(n)?;
        assert!(rs.lower.hi < check.lower.lo && check.upper.hi < rs.upper.lo);
    }
    let summary = bounds.verify_dusart_range(&engine, 60_184, 200_000)?;
    println!("checked {} consecutive n", summary.checked);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
