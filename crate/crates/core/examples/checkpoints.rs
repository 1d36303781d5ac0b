// Saving computed π values and seeding a fresh engine from them.

use pidiv::pi_engine::{load_checkpoints, save_checkpoints, Method, PiEngine};

pub fn run_example() -> pidiv::Result<()> {
    let dir = std::env::temp_dir().join(format!("pidiv-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| pidiv::Error::io(&dir, e))?;
    let path = dir.join("pi.ckpt");

    let engine = PiEngine::default();
    for n in [2_000_000, 5_000_000, 20_000_000] {
        engine.pi_exact(n)?;
    }
    save_checkpoints(&path, &engine.checkpoint())?;

    let fresh = PiEngine::default();
    fresh.absorb(&load_checkpoints(&path)?)?;
    // close to a cached anchor, only the gap is sieved
    let r = fresh.pi_exact(20_000_100)?;
    assert_eq!(r.method, Method::Checkpoint);
    println!("pi({}) = {} from an anchor", r.n, r.pi);
    print!("{}", std::fs::read_to_string(&path).map_err(|e| pidiv::Error::io(&path, e))?);

    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
