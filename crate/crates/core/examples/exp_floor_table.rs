// ⌊e^a⌋ / π(⌊e^a⌋) is an integer only at a = 1.

use pidiv::interval_solver::IntervalSolver;
use pidiv::pi_engine::PiEngine;

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    println!("{:>3} {:>8} {:>6} {:>8}", "a", "n", "pi", "ratio");
    for row in solver.corollary_table(14)? {
        println!("{:>3} {:>8} {:>6} {:>8}", row.a, row.n, row.pi, row.ratio_decimal);
    }
    let bound = solver.verify_small_ratio_bound()?;
    println!("max n/pi(n) below 60184: {} at n = {}", bound.max_ratio, bound.argmax);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
