//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! wall time against its budget. Exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use pidiv::interval_solver::{Coverage, IntervalSolver, DEFAULT_GAP_BUDGET};
use pidiv::pi_engine::{Method, PiEngine};
use pidiv::predicates::{PrecisionPolicy, Predicates, BINDING_THRESHOLD};
use pidiv::sequences::{integer_sequence, ratio_sequence};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["pidiv"];
    full.extend_from_slice(args);
    let code = pidiv::cli::run(full, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn table_reproduction() -> Outcome {
    let (code, out) = run_cli(&["table", "11"]);
    ensure!(code == 0, "exit code {code}");
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let decimals: Vec<String> = reader
        .records()
        .map(|r| r.map(|r| r[4].to_string()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let exact = ["2", "1.75", "2.5"];
    let truncated = ["3.37", "4.35", "5.10", "5.98", "6.94", "7.95", "8.93", "9.89"];
    ensure!(decimals.len() == 11, "{} rows", decimals.len());
    for (got, want) in decimals.iter().zip(exact) {
        ensure!(got == want, "expected {want}, got {got}");
    }
    for (got, want) in decimals[3..].iter().zip(truncated) {
        ensure!(*got == format!("{want}..."), "expected {want}..., got {got}");
    }
    Ok(format!("ratios {}", decimals.join(" ")))
}

fn sequence_prefixes() -> Outcome {
    let engine = PiEngine::default();
    let r: Vec<Ratio<u64>> = ratio_sequence(&engine, 10).map_err(|e| e.to_string())?.map(|t| t.ratio).collect();
    let want_r = [(2, 1), (3, 2), (2, 1), (5, 3), (2, 1), (7, 4), (2, 1), (9, 4), (5, 2)].map(|(a, b)| Ratio::new(a, b));
    ensure!(r == want_r, "R = {r:?}");
    let s: Vec<u64> = integer_sequence(&engine, 150).map_err(|e| e.to_string())?.iter().take(9).map(|t| t.value).collect();
    ensure!(s == [2, 2, 2, 2, 3, 3, 3, 4, 4], "S = {s:?}");
    Ok("R and S prefixes exact".into())
}

fn small_range_fact() -> Outcome {
    let engine = PiEngine::default();
    let b = IntervalSolver::new(&engine).verify_small_ratio_bound().map_err(|e| e.to_string())?;
    ensure!(b.max_ratio < Ratio::from_integer(11), "max {}", b.max_ratio);
    ensure!(b.evaluated == 60_182, "evaluated {}", b.evaluated);
    Ok(format!("max n/pi(n) = {} at n = {} over {} values", b.max_ratio, b.argmax, b.evaluated))
}

fn interval_existence() -> Outcome {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let table = common::plain_pi_table(500_000);
    let mut counts = Vec::new();
    for c in 12..=16u32 {
        let records = solver.solve_interval(c).map_err(|e| e.to_string())?;
        ensure!(!records.is_empty(), "c = {c}: no solution");
        for r in &records {
            ensure!(r.n % (c as u64 - 1) == 0 && r.pi * (c as u64 - 1) == r.n, "c = {c}: bad record {}", r.n);
            ensure!(r.chain_ok(), "c = {c}: chain fails at {}", r.n);
        }
        if c <= 13 {
            let spec = solver.interval_endpoints(c).map_err(|e| e.to_string())?;
            let brute = common::brute_solutions(&table, spec.lo, spec.hi);
            let solved: Vec<(u64, u64)> = records.iter().map(|r| (r.n, r.pi)).collect();
            ensure!(brute == solved, "c = {c}: brute force {brute:?} vs {solved:?}");
        }
        counts.push(format!("c={c}:{}", records.len()));
    }
    Ok(format!("solutions {}", counts.join(" ")))
}

fn criteria_sweep() -> Result<(String, String), String> {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let s = solver.verify_criteria(BINDING_THRESHOLD, 10_000_000).map_err(|e| e.to_string())?;
    let table = common::plain_pi_table(10_000_000);
    let brute = common::brute_solutions(&table, BINDING_THRESHOLD, 10_000_000);
    ensure!(s.solutions == brute, "solution sets differ: {} vs {}", s.solutions.len(), brute.len());
    ensure!(s.checked == 10_000_000 - BINDING_THRESHOLD + 1, "checked {}", s.checked);
    Ok((
        format!("{} n, {} with f = 0, {} solutions all with f = 1, 0 violations", s.checked, s.f_zero, s.solutions.len()),
        format!("{} n, {} with frac > 0.1, 0 divisible", s.checked, s.frac_excluded),
    ))
}

fn gap_zones() -> Outcome {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let mut parts = Vec::new();
    for a in [11, 13] {
        let r = solver.verify_gap_zone(a, DEFAULT_GAP_BUDGET).map_err(|e| e.to_string())?;
        ensure!(r.coverage == Coverage::Exhaustive, "a = {a} was sampled");
        parts.push(format!("a={a} [{}, {}] {} checked", r.lo, r.hi, r.checked));
    }
    Ok(parts.join("; "))
}

fn engine_cross_validation() -> Outcome {
    let engine = PiEngine::default();
    for n in [10_000, 100_000, 1_000_000, 10_000_000, 100_000_000, 1_000_000_000] {
        let a = engine.pi_by(n, Method::Sieve).map_err(|e| e.to_string())?.pi;
        let b = engine.pi_by(n, Method::Sublinear).map_err(|e| e.to_string())?.pi;
        ensure!(a == b, "n = {n}: sieve {a}, sublinear {b}");
    }
    let table = common::plain_pi_table(1_000_000);
    ensure!(table[1_000_000] == 78_498, "plain sieve gives {}", table[1_000_000]);
    ensure!(engine.pi_exact(1_000_000).map_err(|e| e.to_string())?.pi == 78_498, "engine disagrees");
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..1_000 {
        let n = rng.gen_range(2..=1_000_000u64);
        let step = table[n as usize] - table[n as usize - 1];
        ensure!((step == 1) == common::is_prime_td(n), "trial division disagrees at {n}");
    }
    Ok("methods agree at 10^4..10^9; pi(10^6) = 78498 by plain sieve and trial division".into())
}

fn worked_example() -> Outcome {
    let (code, out) = run_cli(&["--format", "json", "check", "10000000000000000000000000000000"]);
    ensure!(code == 0, "exit code {code}");
    let v: serde_json::Value = serde_json::from_str(out.trim()).map_err(|e| e.to_string())?;
    ensure!(v["frac_digit"] == 3, "digit {}", v["frac_digit"]);
    ensure!(v["verdict"] == "NotDivisible_ByFrac", "verdict {}", v["verdict"]);
    let ln = v["ln_n"].as_str().unwrap_or_default();
    ensure!(ln.starts_with("71.38"), "ln n = {ln}");
    Ok(format!("ln n = {ln}, digit 3, NotDivisible_ByFrac"))
}

fn precision_invariance() -> Outcome {
    let base = Predicates::default();
    let doubled = Predicates::new(PrecisionPolicy::default().doubled());
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..10_000 {
        let n = rng.gen_range(BINDING_THRESHOLD..=1_000_000_000_000u64);
        let a = base.evaluate(n).map_err(|e| e.to_string())?;
        let b = doubled.evaluate(n).map_err(|e| e.to_string())?;
        ensure!(a == b, "n = {n}: {a:?} vs {b:?}");
    }
    Ok("10^4 random n, 0 discrepancies".into())
}

fn timed<T>(f: impl FnOnce() -> Result<T, String>) -> (Result<T, String>, Duration) {
    let start = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    (r, start.elapsed())
}

fn report(id: u32, name: &str, budget: Option<Duration>, outcome: &Outcome, took: Duration) -> bool {
    let within = budget.is_none_or(|b| took <= b);
    let pass = outcome.is_ok() && within;
    let budget = budget.map(|b| format!(" / {} s", b.as_secs())).unwrap_or_default();
    let detail = match outcome {
        Ok(d) if within => d.clone(),
        Ok(d) => format!("over budget; {d}"),
        Err(e) => e.clone(),
    };
    println!(
        "criterion {id:>2} {} {name} ({:.2} s{budget}): {detail}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64()
    );
    pass
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut ok = true;

    let (r, t) = timed(table_reproduction);
    ok &= report(1, "exp-floor table", secs(5), &r, t);
    let (r, t) = timed(sequence_prefixes);
    ok &= report(2, "sequence prefixes", secs(1), &r, t);
    let (r, t) = timed(small_range_fact);
    ok &= report(3, "small-range ratio bound", secs(10), &r, t);
    let (r, t) = timed(interval_existence);
    ok &= report(4, "candidate interval solutions", secs(120), &r, t);
    let (r, t) = timed(criteria_sweep);
    let (f_part, frac_part) = match r {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    ok &= report(5, "f criterion over [60184, 10^7]", secs(120), &f_part, t);
    ok &= report(6, "fractional-part criterion, same sweep", None, &frac_part, t);
    let (r, t) = timed(gap_zones);
    ok &= report(7, "gap zones a = 11, 13", secs(30), &r, t);
    let (r, t) = timed(engine_cross_validation);
    ok &= report(8, "pi engine cross-validation", secs(60), &r, t);
    let (r, t) = timed(worked_example);
    ok &= report(9, "worked example 10^31", None, &r, t);
    let (r, t) = timed(precision_invariance);
    ok &= report(10, "precision invariance", None, &r, t);

    if !ok {
        std::process::exit(1);
    }
}
