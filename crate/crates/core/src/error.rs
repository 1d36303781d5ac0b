use std::fmt;
use std::io;
use std::path::PathBuf;

use serde::Serialize;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A statement the toolkit checks numerically. A computed counterexample to
/// any of these is reported as a [`Falsification`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// n/(ln n - 1) < pi(n) < n/(ln n - 1.1) for n >= 60184.
    DusartBracket,
    /// n/(ln n - 0.5) < pi(n) < n/(ln n - 1.5) for n >= 67.
    RosserSchoenfeldBracket,
    /// frac(ln n) > 0.1 rules out pi(n) | n for n >= 60184.
    FracCriterion,
    /// f(n) = 0 rules out pi(n) | n, and pi(n) | n forces f(n) = 1.
    FCriterion,
    /// No solution of pi(n) | n lies strictly between e^{a+0.1} and e^{a+1}, a >= 11.
    GapZone,
    /// Every candidate interval [e^c, e^{c+0.1}], c >= 12, holds a solution.
    IntervalExistence,
    /// Solutions above 60183 sit in a candidate interval as multiples of c - 1.
    Localization,
    /// The six floor/ceiling expressions agree with n/pi(n) at every solution.
    EqualityChain,
    /// pi(floor(e^a)) divides floor(e^a) only for a = 1.
    ExponentialFloor,
    /// n/pi(n) < 11 for 2 <= n <= 60183.
    SmallRatioBound,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Claim::DusartBracket => "dusart-bracket",
            Claim::RosserSchoenfeldBracket => "rosser-schoenfeld-bracket",
            Claim::FracCriterion => "frac-criterion",
            Claim::FCriterion => "f-criterion",
            Claim::GapZone => "gap-zone",
            Claim::IntervalExistence => "interval-existence",
            Claim::Localization => "localization",
            Claim::EqualityChain => "equality-chain",
            Claim::ExponentialFloor => "exponential-floor",
            Claim::SmallRatioBound => "small-ratio-bound",
        };
        f.write_str(s)
    }
}

/// A computed counterexample. Never expected; carries enough detail to
/// reproduce the offending evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub claim: Claim,
    pub n: String,
    pub detail: String,
}

impl fmt::Display for Falsification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim {} fails at n = {}: {}", self.claim, self.n, self.detail)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("precision cap of {cap_bits} bits reached while deciding floor(10 ln {n})")]
    PrecisionExhausted { n: String, cap_bits: u32 },

    #[error("THEOREM FALSIFIED: {0}")]
    Falsified(Box<Falsification>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn falsified(claim: Claim, n: impl fmt::Display, detail: impl Into<String>) -> Self {
        Error::Falsified(Box::new(Falsification {
            claim,
            n: n.to_string(),
            detail: detail.into(),
        }))
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 0 success, 1 runtime/resource, 2 usage/domain,
    /// 3 claim falsified.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Capacity(_) | Error::Usage(_) => 2,
            Error::Falsified(_) => 3,
            _ => 1,
        }
    }
}
