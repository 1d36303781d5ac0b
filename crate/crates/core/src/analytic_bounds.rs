//! Explicit two-sided bounds on π(n), evaluated as certified enclosures.
//!
//! * Dusart: `n/(ln n − 1) < π(n) < n/(ln n − 1.1)` for n ≥ 60184.
//! * Rosser–Schoenfeld: `n/(ln n − 0.5) < π(n) < n/(ln n − 1.5)` for n ≥ 67.
//!
//! Each bound `n/(ln n − a)` is irrational, so it is carried as a rational
//! interval derived from an enclosure `[l, h]` of ln n:
//! `[n/(h − a), n/(l − a)]`. Comparisons against π(n) are decided on the
//! interval endpoints and precision is raised until they are decisive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Claim, Error, Result};
use crate::pi_engine::PiEngine;
use crate::predicates::{LogEnclosure, Natural, PrecisionPolicy, Tenths, DOUBLE_BITS};

pub const DUSART_THRESHOLD: u64 = 60184;
pub const ROSSER_SCHOENFELD_THRESHOLD: u64 = 67;

/// Relative width the bound enclosures are tightened to before use.
pub const TARGET_RELATIVE_WIDTH: f64 = 1e-12;

/// A closed rational interval known to contain an irrational quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    /// `Some(true)` if every point is below `x`, `Some(false)` if none is,
    /// `None` if `x` falls inside.
    pub fn below(&self, x: &BigRational) -> Option<bool> {
        if &self.hi < x {
            Some(true)
        } else if &self.lo >= x {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(true)` if every point is above `x`, `Some(false)` if none is.
    pub fn above(&self, x: &BigRational) -> Option<bool> {
        if &self.lo > x {
            Some(true)
        } else if &self.hi <= x {
            Some(false)
        } else {
            None
        }
    }

    pub fn relative_width(&self) -> f64 {
        let width = &self.hi - &self.lo;
        let scale = self.lo.abs().max(self.hi.abs());
        if scale.is_zero() {
            return 0.0;
        }
        (width / scale).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn contains(&self, inner: &Enclosure) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Enclosures of a lower and an upper bound on π(n).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundPair {
    pub lower: Enclosure,
    pub upper: Enclosure,
    pub precision_bits: u32,
}

/// A bound pair compared against an exact π(n).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub n: u64,
    pub lower: Enclosure,
    pub upper: Enclosure,
    pub pi: u64,
    pub holds: bool,
    pub precision_bits: u32,
}

/// Summary of a checked range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeSummary {
    pub lo: u64,
    pub hi: u64,
    pub checked: u64,
    /// Largest precision any single decision needed.
    pub max_precision_bits: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Dusart,
    RosserSchoenfeld,
}

impl Family {
    /// Offsets subtracted from ln n in the lower and upper bound.
    fn offsets(self) -> (Tenths, Tenths) {
        match self {
            Family::Dusart => (Tenths::MINUS_ONE, Tenths::MINUS_ONE_TENTH),
            Family::RosserSchoenfeld => (Tenths::MINUS_HALF, Tenths::MINUS_ONE_HALF),
        }
    }

    fn threshold(self) -> u64 {
        match self {
            Family::Dusart => DUSART_THRESHOLD,
            Family::RosserSchoenfeld => ROSSER_SCHOENFELD_THRESHOLD,
        }
    }

    fn claim(self) -> Claim {
        match self {
            Family::Dusart => Claim::DusartBracket,
            Family::RosserSchoenfeld => Claim::RosserSchoenfeldBracket,
        }
    }

    fn check_domain(self, n: u64) -> Result<()> {
        if n < self.threshold() {
            let name = match self {
                Family::Dusart => "Dusart",
                Family::RosserSchoenfeld => "Rosser–Schoenfeld",
            };
            return Err(Error::domain(format!(
                "{name} bounds are asserted only for n ≥ {}, got {n}",
                self.threshold()
            )));
        }
        Ok(())
    }
}

fn tenths(t: Tenths) -> BigRational {
    BigRational::new(BigInt::from(t.0), BigInt::from(10))
}

/// `ln n + shift` as an enclosure.
fn shifted_log(log: &LogEnclosure, shift: Tenths) -> Enclosure {
    let s = tenths(shift);
    Enclosure {
        lo: log.lower() + &s,
        hi: log.upper() + s,
    }
}

/// `n / (ln n + shift)`, valid while `ln n + shift > 0` on the enclosure.
fn quotient(n: u64, denom: &Enclosure) -> Enclosure {
    debug_assert!(denom.lo > BigRational::zero());
    let n = BigRational::from_integer(BigInt::from(n));
    Enclosure {
        lo: &n / &denom.hi,
        hi: n / &denom.lo,
    }
}

fn pair_at(family: Family, n: u64, bits: u32) -> BoundPair {
    let log = LogEnclosure::compute(&Natural::Word(n), bits);
    let (lower_shift, upper_shift) = family.offsets();
    BoundPair {
        lower: quotient(n, &shifted_log(&log, lower_shift)),
        upper: quotient(n, &shifted_log(&log, upper_shift)),
        precision_bits: log.precision_bits(),
    }
}

/// Float screen for the sweep: true when π(n) sits inside the pair by a
/// margin far above the rounding error of these few operations. Anything
/// closer goes through the exact comparison.
fn clearly_inside(family: Family, n: u64, pi: u64) -> bool {
    const SLACK: f64 = 1e-9;
    let ln = (n as f64).ln();
    let q = n as f64 / pi as f64;
    let (lower, upper) = family.offsets();
    // n/(ln n + s) < π(n)  <=>  n/π(n) < ln n + s, with ln n + s > 0
    ln + lower.as_f64() > q + SLACK && ln + upper.as_f64() < q - SLACK
}

/// Bound evaluation under one precision policy.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    policy: PrecisionPolicy,
}

impl Bounds {
    pub fn new(policy: PrecisionPolicy) -> Self {
        Bounds { policy }
    }

    fn tightened(&self, family: Family, n: u64) -> Result<BoundPair> {
        family.check_domain(n)?;
        self.policy
            .schedule()
            .map(|bits| pair_at(family, n, bits))
            .find(|p| {
                p.lower.relative_width() <= TARGET_RELATIVE_WIDTH
                    && p.upper.relative_width() <= TARGET_RELATIVE_WIDTH
            })
            .ok_or_else(|| Error::PrecisionExhausted {
                n: n.to_string(),
                cap_bits: self.policy.cap_bits,
            })
    }

    pub fn dusart_bounds(&self, n: u64) -> Result<BoundPair> {
        self.tightened(Family::Dusart, n)
    }

    pub fn rosser_schoenfeld_bounds(&self, n: u64) -> Result<BoundPair> {
        self.tightened(Family::RosserSchoenfeld, n)
    }

    /// `(ln n − 1.1, ln n − 1)` as enclosures; n/π(n) lies strictly between
    /// them for n ≥ 60184.
    pub fn ratio_bracket(&self, n: u64) -> Result<(Enclosure, Enclosure)> {
        Family::Dusart.check_domain(n)?;
        let log = LogEnclosure::compute(&Natural::Word(n), self.policy.start_bits);
        Ok((
            shifted_log(&log, Tenths::MINUS_ONE_TENTH),
            shifted_log(&log, Tenths::MINUS_ONE),
        ))
    }

    fn check(&self, family: Family, n: u64, pi: u64) -> Result<BoundCheck> {
        family.check_domain(n)?;
        let target = BigRational::from_integer(BigInt::from(pi));
        for bits in self.policy.schedule() {
            let pair = pair_at(family, n, bits);
            let (Some(lower_ok), Some(upper_ok)) =
                (pair.lower.below(&target), pair.upper.above(&target))
            else {
                continue;
            };
            return Ok(BoundCheck {
                n,
                lower: pair.lower,
                upper: pair.upper,
                pi,
                holds: lower_ok && upper_ok,
                precision_bits: pair.precision_bits,
            });
        }
        Err(Error::PrecisionExhausted {
            n: n.to_string(),
            cap_bits: self.policy.cap_bits,
        })
    }

    /// Compares π(n) against the Dusart pair, escalating until decided.
    pub fn check_dusart(&self, n: u64, pi: u64) -> Result<BoundCheck> {
        self.check(Family::Dusart, n, pi)
    }

    pub fn check_rosser_schoenfeld(&self, n: u64, pi: u64) -> Result<BoundCheck> {
        self.check(Family::RosserSchoenfeld, n, pi)
    }

    fn verify_range(
        &self,
        family: Family,
        engine: &PiEngine,
        lo: u64,
        hi: u64,
    ) -> Result<RangeSummary> {
        family.check_domain(lo)?;
        let mut summary = RangeSummary {
            lo,
            hi,
            checked: 0,
            max_precision_bits: 0,
        };
        for (n, pi) in engine.sweep_from(lo, hi)? {
            summary.checked += 1;
            if clearly_inside(family, n, pi) {
                summary.max_precision_bits = summary.max_precision_bits.max(DOUBLE_BITS);
                continue;
            }
            let check = self.check(family, n, pi)?;
            if !check.holds {
                return Err(Error::falsified(
                    family.claim(),
                    n,
                    format!(
                        "π(n) = {pi} outside ({:.6}, {:.6})",
                        check.lower.midpoint_f64(),
                        check.upper.midpoint_f64()
                    ),
                ));
            }
            summary.max_precision_bits = summary.max_precision_bits.max(check.precision_bits);
        }
        Ok(summary)
    }

    /// Checks the Dusart pair at every n in `[lo, hi]` with one sweep.
    pub fn verify_dusart_range(&self, engine: &PiEngine, lo: u64, hi: u64) -> Result<RangeSummary> {
        self.verify_range(Family::Dusart, engine, lo, hi)
    }

    pub fn verify_rosser_schoenfeld_range(
        &self,
        engine: &PiEngine,
        lo: u64,
        hi: u64,
    ) -> Result<RangeSummary> {
        self.verify_range(Family::RosserSchoenfeld, engine, lo, hi)
    }
}

pub fn dusart_bounds(n: u64) -> Result<BoundPair> {
    Bounds::default().dusart_bounds(n)
}

pub fn rosser_schoenfeld_bounds(n: u64) -> Result<BoundPair> {
    Bounds::default().rosser_schoenfeld_bounds(n)
}

pub fn ratio_bracket(n: u64) -> Result<(Enclosure, Enclosure)> {
    Bounds::default().ratio_bracket(n)
}
