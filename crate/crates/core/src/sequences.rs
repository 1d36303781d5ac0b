//! The ratio sequence R = (n/π(n)), its integer subsequence S, witnesses
//! for each integer value, and repeated adjacent values of S.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval_solver::{IntervalSolver, MIN_GAP_INDEX, MIN_INTERVAL_INDEX};
use crate::pi_engine::{PiEngine, SweepCursor};
use crate::predicates::BINDING_THRESHOLD;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RatioTerm {
    pub n: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Ratio<u64>,
    pub is_integer: bool,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Term k of S (1-based), with the n that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct STerm {
    pub k: u64,
    pub value: u64,
    pub witness: u64,
}

/// R for n = 2..=n_max, streamed from one sweep.
#[derive(Debug)]
pub struct RatioSequence {
    sweep: SweepCursor,
}

impl Iterator for RatioSequence {
    type Item = RatioTerm;

    fn next(&mut self) -> Option<RatioTerm> {
        let (n, pi) = self.sweep.next()?;
        Some(RatioTerm {
            n,
            ratio: Ratio::new(n, pi),
            is_integer: n % pi == 0,
        })
    }
}

pub fn ratio_sequence(engine: &PiEngine, n_max: u64) -> Result<RatioSequence> {
    if n_max < 2 {
        return Err(Error::domain(format!("R starts at n = 2, got n_max = {n_max}")));
    }
    Ok(RatioSequence {
        sweep: engine.sweep_from(2, n_max)?,
    })
}

/// S restricted to witnesses n ≤ n_max.
pub fn integer_sequence(engine: &PiEngine, n_max: u64) -> Result<Vec<STerm>> {
    let mut terms = Vec::new();
    for term in ratio_sequence(engine, n_max)? {
        if term.is_integer {
            terms.push(STerm {
                k: terms.len() as u64 + 1,
                value: term.ratio.to_integer(),
                witness: term.n,
            });
        }
    }
    Ok(terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Minimality {
    /// Every n below the witness was examined.
    Exhaustive,
    /// Every n below 60184 and every candidate interval below the witness
    /// was examined; outside those intervals no solution exists.
    Localized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GolombWitness {
    pub v: u64,
    pub m: u64,
    pub pi: u64,
    pub minimality: Minimality,
}

/// Smallest m with m/π(m) = v, for v ≥ 2.
///
/// Below 60184 the whole range is scanned. Above it, a witness for v can
/// only sit in candidate interval v + 1.
pub fn golomb_witness(solver: &IntervalSolver<'_>, v: u64) -> Result<GolombWitness> {
    if v < 2 {
        return Err(Error::domain(format!("n/π(n) never equals {v}")));
    }
    for (n, pi) in solver.engine().sweep_from(2, BINDING_THRESHOLD - 1)? {
        if pi * v == n {
            return Ok(GolombWitness {
                v,
                m: n,
                pi,
                minimality: Minimality::Exhaustive,
            });
        }
    }
    let first = solver.solutions_for_ratio(v)?.into_iter().next().ok_or_else(|| {
        Error::Resource(format!("no witness for {v} at or below candidate interval {}", v + 1))
    })?;
    let minimality = if first.c < MIN_INTERVAL_INDEX {
        // the threshold falls inside that interval and the sweep covered the rest
        Minimality::Exhaustive
    } else {
        Minimality::Localized
    };
    Ok(GolombWitness {
        v,
        m: first.n,
        pi: first.pi,
        minimality,
    })
}

/// S_k = S_{k+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Repeat {
    pub k: u64,
    pub value: u64,
    pub first: u64,
    pub second: u64,
}

/// A candidate interval holding more than one solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrowdedInterval {
    pub c: u32,
    pub solutions: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepeatReport {
    pub c_max: u32,
    pub terms: Vec<STerm>,
    pub repeats: Vec<Repeat>,
    pub crowded: Vec<CrowdedInterval>,
}

/// Adjacent equal terms of S over all n < 60184 and every candidate
/// interval up to `c_max`.
pub fn find_repeats(solver: &IntervalSolver<'_>, c_max: u32) -> Result<RepeatReport> {
    if c_max < MIN_INTERVAL_INDEX {
        return Err(Error::domain(format!(
            "the search horizon must reach c = {MIN_INTERVAL_INDEX}, got {c_max}"
        )));
    }
    let mut terms = integer_sequence(solver.engine(), BINDING_THRESHOLD - 1)?;
    let mut crowded = Vec::new();
    for c in MIN_GAP_INDEX..=c_max {
        let found = solver.solutions_for_ratio(c as u64 - 1)?;
        if c >= MIN_INTERVAL_INDEX && found.len() >= 2 {
            crowded.push(CrowdedInterval {
                c,
                solutions: found.iter().map(|r| r.n).collect(),
            });
        }
        for r in found {
            terms.push(STerm {
                k: terms.len() as u64 + 1,
                value: r.ratio,
                witness: r.n,
            });
        }
    }
    let repeats = terms
        .windows(2)
        .filter(|w| w[0].value == w[1].value)
        .map(|w| Repeat {
            k: w[0].k,
            value: w[0].value,
            first: w[0].witness,
            second: w[1].witness,
        })
        .collect();
    Ok(RepeatReport {
        c_max,
        terms,
        repeats,
        crowded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes() {
        let engine = PiEngine::default();
        let r: Vec<Ratio<u64>> = ratio_sequence(&engine, 10).unwrap().map(|t| t.ratio).collect();
        let expect = [(2, 1), (3, 2), (2, 1), (5, 3), (2, 1), (7, 4), (2, 1), (9, 4), (5, 2)];
        assert_eq!(r, expect.map(|(a, b)| Ratio::new(a, b)));
        let s = integer_sequence(&engine, 150).unwrap();
        let values: Vec<u64> = s.iter().take(9).map(|t| t.value).collect();
        assert_eq!(values, [2, 2, 2, 2, 3, 3, 3, 4, 4]);
        let twos: Vec<u64> = s.iter().take(4).map(|t| t.witness).collect();
        assert_eq!(twos, [2, 4, 6, 8]);
        assert!(ratio_sequence(&engine, 1).is_err());
    }

    #[test]
    fn small_witnesses() {
        let engine = PiEngine::default();
        let solver = IntervalSolver::new(&engine);
        assert_eq!(golomb_witness(&solver, 2).unwrap().m, 2);
        let w3 = golomb_witness(&solver, 3).unwrap();
        assert_eq!((w3.m, w3.pi), (27, 9));
        let w10 = golomb_witness(&solver, 10).unwrap();
        assert_eq!((w10.m, w10.minimality), (64_540, Minimality::Exhaustive));
        let w11 = golomb_witness(&solver, 11).unwrap();
        assert_eq!((w11.m, w11.minimality), (175_197, Minimality::Localized));
        assert!(golomb_witness(&solver, 1).is_err());
    }

    #[test]
    fn early_repeats() {
        let engine = PiEngine::default();
        let solver = IntervalSolver::new(&engine);
        let report = find_repeats(&solver, 12).unwrap();
        let twos: Vec<u64> = report.repeats.iter().filter(|r| r.value == 2).map(|r| r.k).collect();
        assert_eq!(twos, [1, 2, 3]);
        assert!(report.repeats.iter().any(|r| r.value == 3));
        assert!(matches!(find_repeats(&solver, 11), Err(Error::Domain(_))));
    }
}
