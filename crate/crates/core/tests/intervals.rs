mod common;

use pidiv::interval_solver::{
    candidate_interval_of, least_above_exp_tenths, Coverage, IntervalSolver, DEFAULT_GAP_BUDGET,
};
use pidiv::pi_engine::PiEngine;
use pidiv::predicates::{PrecisionPolicy, Predicates, BINDING_THRESHOLD};
use pidiv::sequences::{find_repeats, golomb_witness, integer_sequence, Minimality};
use pidiv::Error;

#[test]
fn solve_matches_blind_brute_force() {
    let table = common::plain_pi_table(500_000);
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for c in [12, 13] {
        let spec = solver.interval_endpoints(c).unwrap();
        let brute = common::brute_solutions(&table, spec.lo, spec.hi);
        let solved: Vec<(u64, u64)> = solver.solve_interval(c).unwrap().iter().map(|r| (r.n, r.pi)).collect();
        assert_eq!(solved, brute, "c = {c}");
        assert!(brute.iter().all(|(n, pi)| n / pi == c as u64 - 1));
    }
}

#[test]
fn endpoints_against_float_exponentials() {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for c in 12..=40 {
        let spec = solver.interval_endpoints(c).unwrap();
        let lo = (c as f64).exp();
        let hi = (c as f64 + 0.1).exp();
        // integers, so the float values pin them unless within rounding
        assert!((spec.lo as f64 - lo.ceil()).abs() <= lo * 1e-13 + 1.0, "c = {c}");
        assert!((spec.hi as f64 - hi.floor()).abs() <= hi * 1e-13 + 1.0, "c = {c}");
        assert!(spec.lo as f64 >= lo * (1.0 - 1e-14) && (spec.lo - 1) as f64 <= lo * (1.0 + 1e-14));
    }
}

#[test]
fn endpoints_do_not_move_with_precision() {
    let engine = PiEngine::default();
    let base = IntervalSolver::new(&engine);
    let fine = IntervalSolver::new(&engine).with_predicates(Predicates::new(PrecisionPolicy {
        start_bits: 512,
        cap_bits: 8192,
    }));
    for c in 12..=43 {
        assert_eq!(base.interval_endpoints(c).unwrap(), fine.interval_endpoints(c).unwrap());
    }
    for a in 11..=42 {
        assert_eq!(base.gap_zone_range(a).unwrap(), fine.gap_zone_range(a).unwrap());
    }
}

#[test]
fn zones_and_intervals_tile_the_line() {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let mut expect_next = least_above_exp_tenths(111, PrecisionPolicy::default()).unwrap();
    for a in 11..=42 {
        let (lo, hi) = solver.gap_zone_range(a).unwrap();
        assert_eq!(lo, expect_next, "gap zone {a}");
        let spec = solver.interval_endpoints(a + 1).unwrap();
        assert_eq!(spec.lo, hi + 1, "interval {}", a + 1);
        expect_next = spec.hi + 1;
    }
}

#[test]
fn solutions_up_to_ten_million_are_localized() {
    let table = common::plain_pi_table(10_000_000);
    let p = PrecisionPolicy::default();
    let predicates = Predicates::default();
    let solutions = common::brute_solutions(&table, BINDING_THRESHOLD, 10_000_000);
    assert!(solutions.len() > 50);
    for (n, pi) in solutions {
        let k = candidate_interval_of(n, p).unwrap().expect("inside a candidate interval");
        assert_eq!(n / pi, k as u64 - 1, "n = {n}");
        assert!(predicates.equality_chain(n, pi).unwrap().all_equal);
    }
}

#[test]
fn gap_zones_by_sweep_and_by_sample() {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for a in 11..=14 {
        let full = solver.verify_gap_zone(a, DEFAULT_GAP_BUDGET).unwrap();
        assert_eq!(full.coverage, Coverage::Exhaustive);
        assert_eq!(full.checked, full.hi - full.lo + 1);
    }
    let sampled = solver.verify_gap_zone(15, 1_000).unwrap();
    assert_eq!(sampled.coverage, Coverage::Sampled);
    assert!(sampled.checked > 100_000);
    assert!(matches!(solver.verify_gap_zone(10, 1), Err(Error::Domain(_))));
}

#[test]
fn corollary_table_against_plain_sieve() {
    let table = common::plain_pi_table(2_000_000);
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    for row in solver.corollary_table(14).unwrap() {
        assert_eq!(row.n, (row.a as f64).exp().floor() as u64);
        assert_eq!(row.pi, table[row.n as usize]);
        assert_eq!(row.is_integer, row.a == 1);
    }
}

#[test]
fn small_ratio_bound_against_plain_sieve() {
    let table = common::plain_pi_table(60_183);
    let engine = PiEngine::default();
    let bound = IntervalSolver::new(&engine).verify_small_ratio_bound().unwrap();
    let best = (2..=60_183u64)
        .map(|n| num_rational::Ratio::new(n, table[n as usize]))
        .max()
        .unwrap();
    assert_eq!(bound.max_ratio, best);
    assert_eq!(bound.evaluated, 60_182);
    assert!(bound.max_ratio < num_rational::Ratio::from_integer(11));
}

#[test]
fn witnesses_for_two_through_eighteen() {
    let table = common::plain_pi_table(2_000_000);
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let mut last = 0;
    for v in 2..=18u64 {
        let w = golomb_witness(&solver, v).unwrap();
        assert_eq!(w.m, v * w.pi, "v = {v}");
        assert!(w.m > last || v == 2);
        last = w.m;
        if v <= 13 {
            assert_eq!(w.pi, table[w.m as usize]);
            let earlier = (2..w.m).find(|&n| n == v * table[n as usize]);
            assert_eq!(earlier, None, "v = {v}");
        }
        if v >= 11 {
            assert_eq!(w.minimality, Minimality::Localized);
        }
    }
}

#[test]
fn integer_sequence_agrees_with_interval_solutions() {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let horizon = solver.interval_endpoints(16).unwrap().hi;
    let terms = integer_sequence(&engine, horizon).unwrap();
    let from_sequence: Vec<u64> = terms
        .iter()
        .filter(|t| t.witness >= solver.interval_endpoints(12).unwrap().lo)
        .map(|t| t.witness)
        .collect();
    let from_solver: Vec<u64> = (12..=16)
        .flat_map(|c| solver.solve_interval(c).unwrap())
        .map(|r| r.n)
        .collect();
    assert_eq!(from_sequence, from_solver);

    // above the threshold every value is ⌊ln n − 1⌋ and the chain holds
    let predicates = Predicates::default();
    for t in terms.iter().filter(|t| t.witness >= BINDING_THRESHOLD) {
        assert_eq!(t.value as i64, predicates.evaluate(t.witness).unwrap().divisor_candidate);
        predicates.equality_chain(t.witness, t.witness / t.value).unwrap();
    }
    assert!(terms.windows(2).all(|w| w[0].witness < w[1].witness && w[1].k == w[0].k + 1));
}

#[test]
fn repeats_match_crowded_intervals() {
    let engine = PiEngine::default();
    let solver = IntervalSolver::new(&engine);
    let report = find_repeats(&solver, 16).unwrap();
    for crowded in &report.crowded {
        let value = crowded.c as u64 - 1;
        let count = report.repeats.iter().filter(|r| r.value == value).count();
        assert_eq!(count, crowded.solutions.len() - 1, "c = {}", crowded.c);
    }
    // every repeat with value ≥ 11 comes from a crowded interval
    for r in report.repeats.iter().filter(|r| r.value >= 11) {
        assert!(report.crowded.iter().any(|c| c.c as u64 == r.value + 1));
    }
}
