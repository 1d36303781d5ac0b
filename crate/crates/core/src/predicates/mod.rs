//! Floor-of-logarithm criteria for whether π(n) can divide n.
//!
//! For n ≥ 60184:
//!
//! * `g(n) = |⌊frac(ln n) − 0.1⌋|` is 1 exactly when frac(ln n) < 0.1;
//! * `h(n) = ⌊⌊n/d⌋·d / n⌋` with `d = ⌊ln n − 1⌋` is 1 exactly when d | n;
//! * `f(n) = g(n)·h(n)`, and `f(n) = 0` rules out π(n) | n.
//!
//! `f(n) = 1` is only a candidate verdict; it does not imply divisibility.
//! Every floor goes through a [`CertifiedLog`].

mod certified_log;
mod natural;

use std::fmt;

use serde::Serialize;

pub use certified_log::{
    certified_log, CertifiedLog, LogEnclosure, PrecisionPolicy, Tenths, DOUBLE_BITS,
};
pub use natural::Natural;

use crate::error::{Claim, Error, Result};

/// Smallest n for which the criteria are backed by the explicit π bounds.
pub const BINDING_THRESHOLD: u64 = 60184;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// g = 1 but h = 0: ⌊ln n − 1⌋ does not divide n.
    #[serde(rename = "NotDivisible_ByF")]
    NotDivisibleByF,
    /// g = 0: frac(ln n) > 0.1.
    #[serde(rename = "NotDivisible_ByFrac")]
    NotDivisibleByFrac,
    /// f = 1; π(n) may or may not divide n.
    Candidate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotDivisibleByF => "NotDivisible_ByF",
            Verdict::NotDivisibleByFrac => "NotDivisible_ByFrac",
            Verdict::Candidate => "Candidate",
        })
    }
}

/// Every criterion evaluated at one n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredicateReport {
    pub n: Natural,
    pub g: u8,
    pub h: u8,
    pub f: u8,
    pub frac_digit: u8,
    /// `⌊ln n − 1⌋`, the only possible integer value of n/π(n).
    pub divisor_candidate: i64,
    pub divides: bool,
    pub verdict: Verdict,
    /// False below the threshold, where the arithmetic is evaluable but the
    /// criteria are not backed.
    pub binding: bool,
    /// ln n truncated to the digits the enclosure fixes.
    pub ln_n: String,
    pub precision_bits: u32,
}

/// g, h, f and the digit they hinge on, without the presentation fields of
/// [`PredicateReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub g: u8,
    pub h: u8,
    pub f: u8,
    pub frac_digit: u8,
    pub divisor_candidate: i64,
}

impl Evaluation {
    pub fn from_log(log: &CertifiedLog) -> Self {
        let g = (log.integer_part() - log.floor_shifted(Tenths::MINUS_TENTH)).unsigned_abs() as u8;
        let divisor = log.floor_shifted(Tenths::MINUS_ONE);
        let h = (divisor != 0 && log.n().rem_u64(divisor.unsigned_abs()) == 0) as u8;
        Evaluation {
            g,
            h,
            f: g * h,
            frac_digit: log.frac_digit(),
            divisor_candidate: divisor,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match (self.g, self.h) {
            (0, _) => Verdict::NotDivisibleByFrac,
            (_, 0) => Verdict::NotDivisibleByF,
            _ => Verdict::Candidate,
        }
    }
}

impl PredicateReport {
    fn from_log(log: &CertifiedLog) -> Self {
        let n = log.n().clone();
        let eval = Evaluation::from_log(log);
        let ln_n = (1..=12)
            .rev()
            .find_map(|d| log.enclosure().truncated_decimal(d))
            .map(|s| format!("{s}..."))
            .unwrap_or_else(|| format!("{:.1}", log.approx()));
        PredicateReport {
            binding: n >= Natural::Word(BINDING_THRESHOLD),
            n,
            g: eval.g,
            h: eval.h,
            f: eval.f,
            frac_digit: eval.frac_digit,
            divisor_candidate: eval.divisor_candidate,
            divides: eval.h == 1,
            verdict: eval.verdict(),
            ln_n,
            precision_bits: log.precision_bits(),
        }
    }
}

/// The six expressions that must all equal n/π(n) at a solution above the
/// threshold, in this order:
/// `⌈ln n − 1.5⌉, ⌊ln n − 0.5⌋, ⌊ln n − 1⌋, ⌊ln n − 1.1⌋ + 1, ⌈ln n − 1.1⌉, ⌈ln n − 1⌉ − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityChain {
    pub n: u64,
    pub pi: u64,
    pub ratio: u64,
    pub values: [i64; 6],
    /// All six values coincide with n/π(n).
    pub all_equal: bool,
}

impl EqualityChain {
    pub const LABELS: [&'static str; 6] = [
        "ceil(ln n - 1.5)",
        "floor(ln n - 0.5)",
        "floor(ln n - 1)",
        "floor(ln n - 1.1) + 1",
        "ceil(ln n - 1.1)",
        "ceil(ln n - 1) - 1",
    ];

    /// Evaluates the chain without judging it.
    pub fn evaluate(log: &CertifiedLog, n: u64, pi: u64) -> Self {
        let values = [
            log.ceil_shifted(Tenths::MINUS_ONE_HALF),
            log.floor_shifted(Tenths::MINUS_HALF),
            log.floor_shifted(Tenths::MINUS_ONE),
            log.floor_shifted(Tenths::MINUS_ONE_TENTH) + 1,
            log.ceil_shifted(Tenths::MINUS_ONE_TENTH),
            log.ceil_shifted(Tenths::MINUS_ONE) - 1,
        ];
        let ratio = n / pi;
        EqualityChain {
            n,
            pi,
            ratio,
            values,
            all_equal: values.iter().all(|&v| v == ratio as i64),
        }
    }
}

/// Criterion evaluation under one precision policy.
#[derive(Clone, Copy, Debug, Default)]
pub struct Predicates {
    policy: PrecisionPolicy,
}

impl Predicates {
    pub fn new(policy: PrecisionPolicy) -> Self {
        Predicates { policy }
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    /// Certified ln n covering every standard shift.
    pub fn certified_log(&self, n: impl Into<Natural>) -> Result<CertifiedLog> {
        certified_log(n, &Tenths::STANDARD, self.policy)
    }

    fn binding_log(&self, n: impl Into<Natural>) -> Result<CertifiedLog> {
        let n = n.into();
        if n < Natural::Word(BINDING_THRESHOLD) {
            return Err(Error::domain(format!(
                "the divisibility criteria hold only for n ≥ {BINDING_THRESHOLD}, got {n}"
            )));
        }
        self.certified_log(n)
    }

    pub fn g(&self, n: impl Into<Natural>) -> Result<u8> {
        Ok(self.evaluate(n)?.g)
    }

    pub fn h(&self, n: impl Into<Natural>) -> Result<u8> {
        Ok(self.evaluate(n)?.h)
    }

    pub fn f(&self, n: impl Into<Natural>) -> Result<u8> {
        Ok(self.evaluate(n)?.f)
    }

    /// g, h, f and the first fractional digit for n ≥ 60184.
    pub fn evaluate(&self, n: impl Into<Natural>) -> Result<Evaluation> {
        Ok(Evaluation::from_log(&self.binding_log(n)?))
    }

    /// Full report for n ≥ 60184.
    pub fn report(&self, n: impl Into<Natural>) -> Result<PredicateReport> {
        Ok(PredicateReport::from_log(&self.binding_log(n)?))
    }

    /// Same arithmetic for any n ≥ 2, labelled non-binding below the
    /// threshold.
    pub fn advisory_report(&self, n: impl Into<Natural>) -> Result<PredicateReport> {
        Ok(PredicateReport::from_log(&self.certified_log(n)?))
    }

    /// First decimal digit of frac(ln n), for any n ≥ 2.
    pub fn frac_digit(&self, n: impl Into<Natural>) -> Result<u8> {
        Ok(certified_log(n, &[Tenths::ZERO], self.policy)?.frac_digit())
    }

    /// Checks the six-way equality at a solution. Requires n ≥ 60184 and
    /// π(n) | n; a chain that fails is a falsification.
    pub fn equality_chain(&self, n: u64, pi: u64) -> Result<EqualityChain> {
        if pi == 0 || n % pi != 0 {
            return Err(Error::Contract(format!(
                "the chain is asserted only when n/π(n) is an integer; {n}/{pi} is not"
            )));
        }
        let log = self.binding_log(n)?;
        let chain = EqualityChain::evaluate(&log, n, pi);
        if !chain.all_equal {
            return Err(Error::falsified(
                Claim::EqualityChain,
                n,
                format!(
                    "n/π(n) = {} but the chain evaluates to {:?}",
                    chain.ratio, chain.values
                ),
            ));
        }
        Ok(chain)
    }
}

pub fn g_predicate(n: impl Into<Natural>) -> Result<u8> {
    Predicates::default().g(n)
}

pub fn h_predicate(n: impl Into<Natural>) -> Result<u8> {
    Predicates::default().h(n)
}

pub fn f_predicate(n: impl Into<Natural>) -> Result<PredicateReport> {
    Predicates::default().report(n)
}

pub fn frac_digit(n: impl Into<Natural>) -> Result<u8> {
    Predicates::default().frac_digit(n)
}

pub fn equality_chain(n: u64, pi: u64) -> Result<EqualityChain> {
    Predicates::default().equality_chain(n, pi)
}
