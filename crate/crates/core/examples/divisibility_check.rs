// The g, h and f tests, for numbers far beyond the reach of π.

use pidiv::predicates::{Natural, Predicates};

pub fn run_example() -> pidiv::Result<()> {
    let predicates = Predicates::default();
    for n in ["162755", "175197", "10000000000000000000000000000000"] {
        let n: Natural = n.parse()?;
        let r = predicates.report(n)?;
        println!(
            "n = {}  ln n = {}  g = {} h = {} f = {}  {}",
            r.n, r.ln_n, r.g, r.h, r.f, r.verdict
        );
    }

    // at a solution all six floor/ceiling forms give n/π(n)
    let chain = predicates.equality_chain(175_197, 15_927)?;
    println!("chain at 175197: {:?}", chain.values);

    // below the threshold the same arithmetic is only advisory
    let advisory = predicates.advisory_report(27u64)?;
    assert!(!advisory.binding);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
