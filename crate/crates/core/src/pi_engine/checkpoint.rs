//! Plain-text checkpoint files of exact (n, π(n)) anchors.
//!
//! ```text
//! # pidiv-checkpoint v1 pidiv 0.1.0
//! 1000000,78498
//! 10000000,664579
//! ```
//!
//! One header line naming the format version (and the writer), then one
//! `n,pi` pair per line in strictly ascending `n`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const HEADER_TAG: &str = "# pidiv-checkpoint v1";

/// An ordered set of exact π anchors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiCheckpoint {
    pub anchors: Vec<(u64, u64)>,
    pub source_version: String,
}

impl PiCheckpoint {
    pub fn new(anchors: Vec<(u64, u64)>) -> Result<Self> {
        let cp = PiCheckpoint {
            anchors,
            source_version: current_source_version(),
        };
        cp.validate()?;
        Ok(cp)
    }

    /// Checks ordering, monotonicity and the step bound
    /// `π(b) − π(a) ≤ b − a` between neighbouring anchors.
    pub fn validate(&self) -> Result<()> {
        for &(n, pi) in &self.anchors {
            if pi > n || (n < 2) != (pi == 0) {
                return Err(Error::Integrity(format!(
                    "anchor ({n}, {pi}) is not a possible prime count"
                )));
            }
        }
        for w in self.anchors.windows(2) {
            let ((a, pa), (b, pb)) = (w[0], w[1]);
            if b <= a {
                return Err(Error::Integrity(format!(
                    "anchors not strictly increasing: {a} then {b}"
                )));
            }
            if pb < pa {
                return Err(Error::Integrity(format!(
                    "prime count decreases from π({a}) = {pa} to π({b}) = {pb}"
                )));
            }
            if pb - pa > b - a {
                return Err(Error::Integrity(format!(
                    "π({b}) − π({a}) = {} exceeds the gap {}",
                    pb - pa,
                    b - a
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER_TAG} {}\n", self.source_version);
        for (n, pi) in &self.anchors {
            writeln!(out, "{n},{pi}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let source_version = match lines.peek() {
            None => return Ok(PiCheckpoint::default()),
            Some((_, first)) if first.starts_with('#') => {
                let rest = first.strip_prefix(HEADER_TAG).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("unsupported header {first:?}, expected {HEADER_TAG:?}"),
                })?;
                let version = rest.trim().to_string();
                lines.next();
                version
            }
            Some(_) => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("missing header line {HEADER_TAG:?}"),
                })
            }
        };
        let mut anchors = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            let (n, pi) = line
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected \"n,pi\", got {line:?}")))?;
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad n {n:?}: {e}")))?;
            let pi: u64 = pi
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad pi {pi:?}: {e}")))?;
            anchors.push((n, pi));
        }
        let cp = PiCheckpoint {
            anchors,
            source_version,
        };
        cp.validate()?;
        Ok(cp)
    }
}

pub(crate) fn current_source_version() -> String {
    format!("pidiv {}", env!("CARGO_PKG_VERSION"))
}

pub fn save_checkpoints(path: impl AsRef<Path>, checkpoint: &PiCheckpoint) -> Result<()> {
    let path = path.as_ref();
    checkpoint.validate()?;
    fs::write(path, checkpoint.to_text()).map_err(|e| Error::io(path, e))
}

pub fn load_checkpoints(path: impl AsRef<Path>) -> Result<PiCheckpoint> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    PiCheckpoint::parse(&text)
}
