// π(n) by each method, and a sweep that streams π over a range.

use pidiv::pi_engine::{Method, PiEngine};

pub fn run_example() -> pidiv::Result<()> {
    let engine = PiEngine::default();
    for n in [10, 1_000, 1_000_000, 100_000_000, 1_000_000_000] {
        let r = engine.pi_exact(n)?;
        println!("pi({n}) = {} [{}]", r.pi, r.method);
    }

    // the two counting methods agree
    let sieve = engine.pi_by(10_000_000, Method::Sieve)?;
    let sublinear = engine.pi_by(10_000_000, Method::Sublinear)?;
    assert_eq!(sieve.pi, sublinear.pi);

    // primes between 100 and 130 show up as steps in the running count
    let mut last = engine.pi_exact(99)?.pi;
    for (n, pi) in engine.sweep_from(100, 130)? {
        if pi > last {
            print!("{n} ");
        }
        last = pi;
    }
    println!();
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
