// Solutions of π(n) | n inside [⌈e^c⌉, ⌊e^{c+0.1}⌋].

use pidiv::interval_solver::IntervalSolver;
use pidiv::pi_engine::PiEngine;

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for c in 12..=15 {
        let spec = solver.interval_endpoints(c)?;
        let solutions = solver.solve_interval(c)?;
        let ns: Vec<u64> = solutions.iter().map(|s| s.n).collect();
        println!("c = {c}  [{}, {}]  n/pi(n) = {}  n = {ns:?}", spec.lo, spec.hi, spec.expected_ratio);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
