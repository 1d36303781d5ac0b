// No solutions between e^{a+0.1} and e^{a+1}, checked exhaustively or by
// a deterministic sample.

use pidiv::interval_solver::{IntervalSolver, DEFAULT_GAP_BUDGET};
use pidiv::pi_engine::PiEngine;

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for a in 11..=14 {
        let r = solver.verify_gap_zone(a, DEFAULT_GAP_BUDGET)?;
        println!("a = {a}  [{}, {}]  {:?}, {} checked", r.lo, r.hi, r.coverage, r.checked);
    }
    // a tiny budget forces the sampled path
    let r = solver.verify_gap_zone(14, 50_000)?;
    println!("a = 14 sampled: {} checked", r.checked);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
