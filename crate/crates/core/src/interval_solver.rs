//! Locating the solutions of π(n) | n.
//!
//! Above 60183 a solution n has n/π(n) = ⌊ln n − 1⌋ and frac(ln n) < 0.1,
//! so it lies in a candidate interval `[⌈e^c⌉, ⌊e^{c+0.1}⌋]` as a multiple
//! of `c − 1`. Everything strictly between `e^{a+0.1}` and `e^{a+1}` is a
//! gap zone with no solutions.
//!
//! Interval endpoints are integers decided through certified logarithms:
//! `⌈e^c⌉` is the least n with `⌊10 ln n⌋ ≥ 10c`, and `⌊e^{c+0.1}⌋` is the
//! greatest n with `⌊10 ln n⌋ ≤ 10c`. No exponential is ever rounded.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Claim, Error, Result};
use crate::pi_engine::{check_capacity, PiEngine, PiEngineConfig, MAX_N};
use crate::predicates::{
    certified_log, EqualityChain, Natural, PrecisionPolicy, Predicates, BINDING_THRESHOLD,
};

/// Smallest interval index for which a solution is guaranteed.
pub const MIN_INTERVAL_INDEX: u32 = 12;

/// Smallest gap-zone index.
pub const MIN_GAP_INDEX: u32 = 11;

/// Largest c solved without an explicit opt-in.
pub const DEFAULT_MAX_C: u32 = 20;

/// Gap zones up to this many integers are swept exhaustively by default.
pub const DEFAULT_GAP_BUDGET: u64 = 2_000_000;

const SAMPLE_EDGE: u64 = 10_000;
const SAMPLE_INTERIOR: u64 = 100_000;

/// `[⌈e^c⌉, ⌊e^{c+0.1}⌋]` with certified endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalSpec {
    pub c: u32,
    pub lo: u64,
    pub hi: u64,
    pub expected_ratio: u64,
}

impl IntervalSpec {
    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }
}

/// A solution of π(n)·(c − 1) = n inside candidate interval c.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub c: u32,
    pub n: u64,
    pub pi: u64,
    pub ratio: u64,
    pub chain: EqualityChain,
}

impl SolutionRecord {
    pub fn chain_ok(&self) -> bool {
        self.chain.all_equal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sampled,
}

/// Outcome of a gap-zone check. Any solution found aborts with a
/// falsification instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapZoneReport {
    pub a: u32,
    /// First integer above e^{a+0.1}.
    pub lo: u64,
    /// Last integer below e^{a+1}.
    pub hi: u64,
    pub coverage: Coverage,
    pub checked: u64,
}

/// One row of the ⌊e^a⌋ table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpFloorRow {
    pub a: u32,
    pub n: u64,
    pub pi: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Ratio<u64>,
    /// The ratio as a terminating decimal, or truncated to two places
    /// followed by "...".
    pub ratio_decimal: String,
    pub is_integer: bool,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Maximum of n/π(n) over `[2, 60183]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallRatioBound {
    pub argmax: u64,
    pub pi: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub max_ratio: Ratio<u64>,
    pub evaluated: u64,
}

/// Counts from an exhaustive check of the criteria over a range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriteriaSummary {
    pub lo: u64,
    pub hi: u64,
    pub checked: u64,
    /// n with f(n) = 0.
    pub f_zero: u64,
    /// n with frac(ln n) > 0.1.
    pub frac_excluded: u64,
    /// n with π(n) | n, in increasing order.
    pub solutions: Vec<(u64, u64)>,
}

/// Smallest n ≥ 2 with `⌊10 ln n⌋ ≥ k`, i.e. the least integer above
/// `e^{k/10}`.
pub fn least_above_exp_tenths(k: i64, policy: PrecisionPolicy) -> Result<u64> {
    if k <= 6 {
        // ln 2 = 0.69..., so n = 2 already qualifies
        return Ok(2);
    }
    let x = (k as f64 / 10.0).exp();
    if x >= MAX_N as f64 {
        return Err(Error::Capacity(format!(
            "e^{} exceeds the 64-bit signed range",
            k as f64 / 10.0
        )));
    }
    let tenfold = |n: u64| -> Result<i64> { Ok(certified_log(n, &[], policy)?.tenfold_floor()) };
    // bracket [below, above] with D(below) < k ≤ D(above)
    let slack = (x * 1e-9) as u64 + 2;
    let mut below = (x as u64).saturating_sub(slack).max(2);
    let mut step = slack;
    while tenfold(below)? >= k {
        below = below.saturating_sub(step).max(2);
        step = step.saturating_mul(2);
        if below == 2 {
            break;
        }
    }
    if below == 2 && tenfold(2)? >= k {
        return Ok(2);
    }
    let mut above = (x as u64).saturating_add(slack).min(MAX_N);
    step = slack;
    while tenfold(above)? < k {
        if above == MAX_N {
            return Err(Error::Capacity(format!(
                "no n below 2^63 has ⌊10 ln n⌋ ≥ {k}"
            )));
        }
        above = above.saturating_add(step).min(MAX_N);
        step = step.saturating_mul(2);
    }
    while above - below > 1 {
        let mid = below + (above - below) / 2;
        if tenfold(mid)? >= k {
            above = mid;
        } else {
            below = mid;
        }
    }
    Ok(above)
}

/// ⌊e^a⌋ for a ≥ 1.
pub fn exp_floor(a: u32, policy: PrecisionPolicy) -> Result<u64> {
    Ok(least_above_exp_tenths(10 * a as i64, policy)? - 1)
}

fn interval_for(c: u32, policy: PrecisionPolicy) -> Result<IntervalSpec> {
    let lo = least_above_exp_tenths(10 * c as i64, policy)?;
    let hi = least_above_exp_tenths(10 * c as i64 + 1, policy)? - 1;
    Ok(IntervalSpec {
        c,
        lo,
        hi,
        expected_ratio: c as u64 - 1,
    })
}

/// Decimal rendering of a ratio: exact if it terminates within `digits`
/// places, otherwise truncated to `digits` places and marked with "...".
pub fn truncated_decimal(r: Ratio<u64>, digits: u32) -> String {
    let (num, den) = (*r.numer() as u128, *r.denom() as u128);
    let int = num / den;
    let mut rem = num % den;
    if rem == 0 {
        return int.to_string();
    }
    let mut frac = String::new();
    for _ in 0..digits {
        rem *= 10;
        frac.push(char::from(b'0' + (rem / den) as u8));
        rem %= den;
        if rem == 0 {
            return format!("{int}.{frac}");
        }
    }
    format!("{int}.{frac}...")
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub max_c: u32,
    pub gap_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_c: DEFAULT_MAX_C,
            gap_budget: DEFAULT_GAP_BUDGET,
        }
    }
}

/// Interval search and zone verification over a shared π engine.
#[derive(Debug)]
pub struct IntervalSolver<'a> {
    engine: &'a PiEngine,
    predicates: Predicates,
    config: SolverConfig,
}

impl<'a> IntervalSolver<'a> {
    pub fn new(engine: &'a PiEngine) -> Self {
        IntervalSolver {
            engine,
            predicates: Predicates::default(),
            config: SolverConfig::default(),
        }
    }

    pub fn with_predicates(mut self, predicates: Predicates) -> Self {
        self.predicates = predicates;
        self
    }

    pub fn with_config(mut self, config: SolverConfig) -> Self {
        self.config = config;
        self
    }

    pub fn engine(&self) -> &PiEngine {
        self.engine
    }

    pub fn predicates(&self) -> Predicates {
        self.predicates
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn policy(&self) -> PrecisionPolicy {
        self.predicates.policy()
    }

    /// Certified `[⌈e^c⌉, ⌊e^{c+0.1}⌋]`, c ≥ 12.
    pub fn interval_endpoints(&self, c: u32) -> Result<IntervalSpec> {
        if c < MIN_INTERVAL_INDEX {
            return Err(Error::domain(format!(
                "candidate intervals are guaranteed a solution only for c ≥ {MIN_INTERVAL_INDEX}, got {c}"
            )));
        }
        interval_for(c, self.policy())
    }

    /// Every n in candidate interval c with π(n)·(c − 1) = n, from one
    /// anchored sweep that tests only multiples of c − 1.
    pub fn solve_interval(&self, c: u32) -> Result<Vec<SolutionRecord>> {
        let spec = self.interval_endpoints(c)?;
        if c > self.config.max_c {
            return Err(Error::Resource(format!(
                "c = {c} is above the configured maximum {} (interval length {}); \
                 raise the maximum explicitly and reuse a checkpoint cache for the anchor",
                self.config.max_c,
                spec.len()
            )));
        }
        let records = self.solutions_in(c, spec.lo.max(BINDING_THRESHOLD), spec.hi)?;
        if records.is_empty() {
            return Err(Error::falsified(
                Claim::IntervalExistence,
                format!("[{}, {}]", spec.lo, spec.hi),
                format!("no n with π(n)·{} = n in candidate interval c = {c}", c - 1),
            ));
        }
        Ok(records)
    }

    /// Solutions with ratio c − 1 in `[lo, hi]`, no domain checks on c.
    fn solutions_in(&self, c: u32, lo: u64, hi: u64) -> Result<Vec<SolutionRecord>> {
        let ratio = c as u64 - 1;
        let mut records = Vec::new();
        for (n, pi) in self.engine.sweep_from(lo, hi)? {
            if n % ratio == 0 && pi * ratio == n {
                let chain = self.predicates.equality_chain(n, pi)?;
                records.push(SolutionRecord {
                    c,
                    n,
                    pi,
                    ratio,
                    chain,
                });
            }
        }
        Ok(records)
    }

    /// Solutions with n/π(n) = v among n ≥ 60184. Those lie in candidate
    /// interval v + 1, clipped to the threshold.
    pub(crate) fn solutions_for_ratio(&self, v: u64) -> Result<Vec<SolutionRecord>> {
        let c = u32::try_from(v + 1).map_err(|_| Error::Capacity(format!("ratio {v}")))?;
        if c < MIN_GAP_INDEX {
            return Ok(Vec::new());
        }
        if c > self.config.max_c {
            return Err(Error::Resource(format!(
                "ratio {v} needs candidate interval c = {c}, above the configured maximum {}",
                self.config.max_c
            )));
        }
        let spec = interval_for(c, self.policy())?;
        if spec.hi < BINDING_THRESHOLD {
            return Ok(Vec::new());
        }
        self.solutions_in(c, spec.lo.max(BINDING_THRESHOLD), spec.hi)
    }

    /// `[⌊e^{a+0.1}⌋ + 1, ⌈e^{a+1}⌉ − 1]`, the integers of gap zone a.
    pub fn gap_zone_range(&self, a: u32) -> Result<(u64, u64)> {
        if a < MIN_GAP_INDEX {
            return Err(Error::domain(format!(
                "gap zones are asserted only for a ≥ {MIN_GAP_INDEX}, got {a}"
            )));
        }
        let policy = self.policy();
        let lo = least_above_exp_tenths(10 * a as i64 + 1, policy)?;
        let hi = least_above_exp_tenths(10 * (a as i64 + 1), policy)? - 1;
        Ok((lo, hi))
    }

    /// Confirms π(n) ∤ n strictly between e^{a+0.1} and e^{a+1}: a full
    /// sweep when the zone fits the budget, otherwise a deterministic sample
    /// of the first and last 10^4 integers plus 10^5 evenly spaced interior
    /// multiples of a − 1.
    pub fn verify_gap_zone(&self, a: u32, budget: u64) -> Result<GapZoneReport> {
        let (lo, hi) = self.gap_zone_range(a)?;
        let len = hi - lo + 1;
        let check = |n: u64, pi: u64| -> Result<()> {
            if pi != 0 && n % pi == 0 {
                return Err(Error::falsified(
                    Claim::GapZone,
                    n,
                    format!("π(n) = {pi} divides n inside gap zone a = {a}"),
                ));
            }
            Ok(())
        };
        if len <= budget {
            let mut checked = 0;
            for (n, pi) in self.engine.sweep_from(lo, hi)? {
                check(n, pi)?;
                checked += 1;
            }
            return Ok(GapZoneReport {
                a,
                lo,
                hi,
                coverage: Coverage::Exhaustive,
                checked,
            });
        }

        let mut checked = 0;
        let head_end = lo + SAMPLE_EDGE - 1;
        let tail_start = hi - SAMPLE_EDGE + 1;
        for (n, pi) in self.engine.sweep_from(lo, head_end)? {
            check(n, pi)?;
            checked += 1;
        }
        for (n, pi) in self.engine.sweep_from(tail_start, hi)? {
            check(n, pi)?;
            checked += 1;
        }
        // interior points chain through a private cache so each query only
        // sieves the stretch since the previous one
        let scratch = PiEngine::new(PiEngineConfig {
            cache_threshold: 0,
            max_anchor_gap: u64::MAX,
            ..self.engine.config().clone()
        });
        scratch.insert_anchor(head_end, self.engine.pi_exact(head_end)?.pi)?;
        let divisor = a as u64 - 1;
        let inner_lo = head_end + 1;
        let inner_len = tail_start - inner_lo;
        let mut last = 0;
        for i in 0..SAMPLE_INTERIOR {
            let raw = inner_lo + (inner_len as u128 * i as u128 / SAMPLE_INTERIOR as u128) as u64;
            let n = raw - raw % divisor + divisor;
            if n >= tail_start || n <= last {
                continue;
            }
            last = n;
            let pi = scratch.pi_exact(n)?.pi;
            check(n, pi)?;
            checked += 1;
        }
        Ok(GapZoneReport {
            a,
            lo,
            hi,
            coverage: Coverage::Sampled,
            checked,
        })
    }

    /// `(a, ⌊e^a⌋, π(⌊e^a⌋), ratio)` for a = 1..=a_max. The ratio is an
    /// integer only at a = 1; any other integer row is a falsification.
    pub fn corollary_table(&self, a_max: u32) -> Result<Vec<ExpFloorRow>> {
        if a_max < 1 {
            return Err(Error::domain("the table starts at a = 1"));
        }
        let mut rows = Vec::with_capacity(a_max as usize);
        for a in 1..=a_max {
            let n = exp_floor(a, self.policy())?;
            check_capacity(n)?;
            let pi = self.engine.pi_exact(n)?.pi;
            let ratio = Ratio::new(n, pi);
            let is_integer = ratio.is_integer();
            if is_integer && a > 1 {
                return Err(Error::falsified(
                    Claim::ExponentialFloor,
                    n,
                    format!("π(⌊e^{a}⌋) = {pi} divides ⌊e^{a}⌋"),
                ));
            }
            rows.push(ExpFloorRow {
                a,
                n,
                pi,
                ratio,
                ratio_decimal: truncated_decimal(ratio, 2),
                is_integer,
            });
        }
        Ok(rows)
    }

    /// Exhaustive maximum of n/π(n) over `[2, 60183]`, compared exactly
    /// against 11.
    pub fn verify_small_ratio_bound(&self) -> Result<SmallRatioBound> {
        let mut best = SmallRatioBound {
            argmax: 2,
            pi: 1,
            max_ratio: Ratio::from_integer(2),
            evaluated: 0,
        };
        for (n, pi) in self.engine.sweep_from(2, BINDING_THRESHOLD - 1)? {
            best.evaluated += 1;
            // n/pi > best.argmax/best.pi, by cross-multiplication
            if (n as u128) * (best.pi as u128) > (best.argmax as u128) * (pi as u128) {
                best.argmax = n;
                best.pi = pi;
            }
        }
        best.max_ratio = Ratio::new(best.argmax, best.pi);
        if best.max_ratio >= Ratio::from_integer(11) {
            return Err(Error::falsified(
                Claim::SmallRatioBound,
                best.argmax,
                format!("n/π(n) = {} ≥ 11", best.max_ratio),
            ));
        }
        Ok(best)
    }

    /// One sweep over `[lo, hi]` (lo ≥ 60184) checking, at every n, that
    /// π(n) | n implies f(n) = 1, frac(ln n) < 0.1, n/π(n) = ⌊ln n − 1⌋, and
    /// that the equality chain holds.
    pub fn verify_criteria(&self, lo: u64, hi: u64) -> Result<CriteriaSummary> {
        if lo < BINDING_THRESHOLD {
            return Err(Error::domain(format!(
                "criteria are asserted only for n ≥ {BINDING_THRESHOLD}, got {lo}"
            )));
        }
        let mut summary = CriteriaSummary {
            lo,
            hi,
            ..Default::default()
        };
        for (n, pi) in self.engine.sweep_from(lo, hi)? {
            let report = self.predicates.evaluate(n)?;
            let divides = n % pi == 0;
            summary.checked += 1;
            summary.f_zero += (report.f == 0) as u64;
            summary.frac_excluded += (report.g == 0) as u64;
            if !divides {
                continue;
            }
            if report.g == 0 {
                return Err(Error::falsified(
                    Claim::FracCriterion,
                    n,
                    format!("frac(ln n) > 0.1 (first digit {}) yet π(n) = {pi} divides n", report.frac_digit),
                ));
            }
            if report.f != 1 {
                return Err(Error::falsified(
                    Claim::FCriterion,
                    n,
                    format!("f(n) = 0 (g = {}, h = {}) yet π(n) = {pi} divides n", report.g, report.h),
                ));
            }
            if n / pi != report.divisor_candidate as u64 {
                return Err(Error::falsified(
                    Claim::Localization,
                    n,
                    format!("n/π(n) = {} differs from ⌊ln n − 1⌋ = {}", n / pi, report.divisor_candidate),
                ));
            }
            self.predicates.equality_chain(n, pi)?;
            summary.solutions.push((n, pi));
        }
        Ok(summary)
    }
}

/// Checks that `n` lies in the candidate interval its logarithm points to.
pub fn candidate_interval_of(n: u64, policy: PrecisionPolicy) -> Result<Option<u32>> {
    let log = certified_log(Natural::Word(n), &[], policy)?;
    Ok(log.frac_below_tenth().then(|| log.integer_part() as u32))
}
