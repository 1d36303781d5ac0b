// The ratios n/π(n), their integer values, witnesses and repeats.

use pidiv::interval_solver::IntervalSolver;
use pidiv::pi_engine::PiEngine;
use pidiv::sequences::{find_repeats, golomb_witness, integer_sequence, ratio_sequence};

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    let r: Vec<String> = ratio_sequence(&engine, 10)?.map(|t| t.ratio.to_string()).collect();
    println!("R = {}", r.join(", "));
    let s: Vec<u64> = integer_sequence(&engine, 150)?.iter().map(|t| t.value).collect();
    println!("S = {s:?}");

    let solver = IntervalSolver::new(&engine);
    for v in [2, 3, 10, 11, 14] {
        let w = golomb_witness(&solver, v)?;
        println!("first n with n/pi(n) = {v}: {} ({:?})", w.m, w.minimality);
    }

    let report = find_repeats(&solver, 15)?;
    println!("{} terms, {} adjacent repeats", report.terms.len(), report.repeats.len());
    for crowded in &report.crowded {
        println!("c = {} holds {:?}", crowded.c, crowded.solutions);
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
