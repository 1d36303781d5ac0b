//! Exact π(n): segmented sieving for small and medium n and for sweeps, a
//! sublinear counter for large point queries, and an in-memory anchor cache
//! that can be persisted as a checkpoint file.

mod checkpoint;
pub mod sieve;
pub mod sublinear;

use std::collections::BTreeMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

pub use checkpoint::{load_checkpoints, save_checkpoints, PiCheckpoint};
pub use sieve::{sieve_primes, PrimeBits, Segment, Sieve};

use crate::error::{Error, Result};
use sieve::SegmentCursor;

/// Largest n accepted anywhere π is required.
pub const MAX_N: u64 = (1 << 63) - 1;

/// How a π value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sieve,
    Sublinear,
    Checkpoint,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Sieve => "sieve",
            Method::Sublinear => "sublinear",
            Method::Checkpoint => "checkpoint",
        })
    }
}

/// An exact value of π at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiResult {
    pub n: u64,
    pub pi: u64,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct PiEngineConfig {
    pub sieve: Sieve,
    /// Point queries at or above this use the sublinear counter.
    pub sublinear_threshold: u64,
    /// Results at or above this are remembered as anchors.
    pub cache_threshold: u64,
    /// A cached anchor within this distance below n is extended by sieving.
    pub max_anchor_gap: u64,
}

impl Default for PiEngineConfig {
    fn default() -> Self {
        PiEngineConfig {
            sieve: Sieve::default(),
            sublinear_threshold: 100_000_000,
            cache_threshold: 1_000_000,
            max_anchor_gap: 1 << 24,
        }
    }
}

/// Point queries and sweeps over exact π. Safe to share between threads; the
/// anchor cache takes a write lock only to insert.
#[derive(Debug)]
pub struct PiEngine {
    config: PiEngineConfig,
    cache: RwLock<BTreeMap<u64, u64>>,
}

impl Default for PiEngine {
    fn default() -> Self {
        PiEngine::new(PiEngineConfig::default())
    }
}

pub(crate) fn check_capacity(n: u64) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Capacity(format!(
            "{n} is at or above 2^63; prime counts are limited to 64-bit signed range"
        )));
    }
    Ok(())
}

impl PiEngine {
    pub fn new(config: PiEngineConfig) -> Self {
        PiEngine {
            config,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn config(&self) -> &PiEngineConfig {
        &self.config
    }

    pub fn sieve(&self) -> &Sieve {
        &self.config.sieve
    }

    /// Exact π(n), using the cache when an anchor is close enough below n.
    pub fn pi_exact(&self, n: u64) -> Result<PiResult> {
        if n == 0 {
            return Err(Error::domain("π(n) is defined here for n ≥ 1"));
        }
        check_capacity(n)?;
        if n < 2 {
            return Ok(PiResult {
                n,
                pi: 0,
                method: Method::Sieve,
            });
        }
        let anchor = self
            .cache
            .read()
            .unwrap()
            .range(..=n)
            .next_back()
            .map(|(&a, &p)| (a, p));
        let result = match anchor {
            Some((a, pa)) if n - a <= self.config.max_anchor_gap => PiResult {
                n,
                pi: pa + self.config.sieve.count_primes(a + 1, n),
                method: Method::Checkpoint,
            },
            _ if n < self.config.sublinear_threshold => self.pi_by(n, Method::Sieve)?,
            _ => self.pi_by(n, Method::Sublinear)?,
        };
        if n >= self.config.cache_threshold {
            self.cache.write().unwrap().insert(n, result.pi);
        }
        Ok(result)
    }

    /// π(n) by a forced method, bypassing the cache.
    pub fn pi_by(&self, n: u64, method: Method) -> Result<PiResult> {
        check_capacity(n)?;
        let pi = match method {
            Method::Sieve => self.config.sieve.count_primes(0, n),
            Method::Sublinear => sublinear::count_primes(n),
            Method::Checkpoint => {
                return self
                    .cached(n)
                    .map(|pi| PiResult {
                        n,
                        pi,
                        method: Method::Checkpoint,
                    })
                    .ok_or_else(|| Error::Contract(format!("no anchor cached at {n}")))
            }
        };
        Ok(PiResult { n, pi, method })
    }

    pub fn cached(&self, n: u64) -> Option<u64> {
        self.cache.read().unwrap().get(&n).copied()
    }

    /// Streams `(n, π(n))` for every n in `[lo, hi]` with one sieve pass.
    /// `anchor` must be π(lo − 1).
    pub fn pi_sweep(&self, lo: u64, hi: u64, anchor: PiResult) -> Result<SweepCursor> {
        if lo == 0 {
            return Err(Error::domain("sweeps start at n ≥ 1"));
        }
        if hi < lo {
            return Err(Error::domain(format!("empty sweep range [{lo}, {hi}]")));
        }
        check_capacity(hi)?;
        if anchor.n != lo - 1 {
            return Err(Error::Contract(format!(
                "sweep over [{lo}, {hi}] needs an anchor at {}, got one at {}",
                lo - 1,
                anchor.n
            )));
        }
        Ok(SweepCursor::new(&self.config.sieve, lo, hi, anchor.pi))
    }

    /// Sweep whose anchor is fetched with [`PiEngine::pi_exact`].
    pub fn sweep_from(&self, lo: u64, hi: u64) -> Result<SweepCursor> {
        let anchor = if lo <= 1 {
            PiResult {
                n: 0,
                pi: 0,
                method: Method::Sieve,
            }
        } else {
            self.pi_exact(lo - 1)?
        };
        let lo = lo.max(1);
        self.pi_sweep(lo, hi, anchor)
    }

    /// Adds an anchor to the cache after checking it against its neighbours.
    pub fn insert_anchor(&self, n: u64, pi: u64) -> Result<()> {
        let mut cache = self.cache.write().unwrap();
        let below = cache.range(..n).next_back().map(|(&a, &p)| (a, p));
        let above = cache.range(n + 1..).next().map(|(&a, &p)| (a, p));
        let mut probe: Vec<(u64, u64)> = below.into_iter().collect();
        probe.push((n, pi));
        probe.extend(above);
        PiCheckpoint {
            anchors: probe,
            source_version: String::new(),
        }
        .validate()?;
        if let Some(&old) = cache.get(&n) {
            if old != pi {
                return Err(Error::Integrity(format!(
                    "anchor at {n} already holds {old}, refusing {pi}"
                )));
            }
        }
        cache.insert(n, pi);
        Ok(())
    }

    pub fn checkpoint(&self) -> PiCheckpoint {
        PiCheckpoint {
            anchors: self
                .cache
                .read()
                .unwrap()
                .iter()
                .map(|(&a, &p)| (a, p))
                .collect(),
            source_version: checkpoint::current_source_version(),
        }
    }

    /// Merges a validated checkpoint into the cache.
    pub fn absorb(&self, checkpoint: &PiCheckpoint) -> Result<()> {
        checkpoint.validate()?;
        for &(n, pi) in &checkpoint.anchors {
            check_capacity(n)?;
            self.insert_anchor(n, pi)?;
        }
        Ok(())
    }
}

/// Ordered stream of exact `(n, π(n))` over a range, one segment in memory
/// at a time. `running_pi` is always π of the last emitted n.
#[derive(Debug)]
pub struct SweepCursor {
    cursor: SegmentCursor,
    segment: Segment,
    next_n: u64,
    hi: u64,
    running_pi: u64,
    exhausted: bool,
}

impl SweepCursor {
    fn new(sieve: &Sieve, lo: u64, hi: u64, anchor_pi: u64) -> Self {
        let mut cursor = sieve.cursor(lo, hi);
        let mut segment = SegmentCursor::new_segment();
        cursor.advance(&mut segment);
        SweepCursor {
            cursor,
            segment,
            next_n: lo,
            hi,
            running_pi: anchor_pi,
            exhausted: false,
        }
    }

    pub fn segment_lo(&self) -> u64 {
        self.segment.lo()
    }

    pub fn segment_hi(&self) -> u64 {
        self.segment.hi()
    }

    pub fn running_pi(&self) -> u64 {
        self.running_pi
    }

    /// Drains the sweep and returns its final pair.
    pub fn finish(self) -> Option<(u64, u64)> {
        self.last()
    }
}

impl Iterator for SweepCursor {
    type Item = (u64, u64);

    #[inline]
    fn next(&mut self) -> Option<(u64, u64)> {
        if self.exhausted {
            return None;
        }
        let n = self.next_n;
        if n > self.segment.hi() {
            self.cursor.advance(&mut self.segment);
        }
        if self.segment.is_prime(n) {
            self.running_pi += 1;
        }
        if n == self.hi {
            self.exhausted = true;
        } else {
            self.next_n = n + 1;
        }
        Some((n, self.running_pi))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.exhausted {
            return (0, Some(0));
        }
        let left = (self.hi - self.next_n + 1) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let engine = PiEngine::default();
        assert_eq!(engine.pi_exact(1).unwrap().pi, 0);
        assert_eq!(engine.pi_exact(2).unwrap().pi, 1);
        assert_eq!(engine.pi_exact(7).unwrap().pi, 4);
        assert_eq!(engine.pi_exact(10).unwrap().pi, 4);
        assert!(matches!(engine.pi_exact(0), Err(Error::Domain(_))));
        assert!(matches!(engine.pi_exact(1 << 63), Err(Error::Capacity(_))));
    }

    #[test]
    fn sweep_small_range() {
        let engine = PiEngine::default();
        let anchor = engine.pi_exact(1).unwrap();
        let got: Vec<_> = engine.pi_sweep(2, 10, anchor).unwrap().collect();
        assert_eq!(got.len(), 9);
        assert_eq!(got.last(), Some(&(10, 4)));
        assert_eq!(got[0], (2, 1));
    }

    #[test]
    fn degenerate_sweep() {
        let engine = PiEngine::default();
        let anchor = engine.pi_exact(96).unwrap();
        let got: Vec<_> = engine.pi_sweep(97, 97, anchor).unwrap().collect();
        assert_eq!(got, vec![(97, engine.pi_exact(97).unwrap().pi)]);
    }

    #[test]
    fn anchor_mismatch_is_contract_error() {
        let engine = PiEngine::default();
        let anchor = engine.pi_exact(5).unwrap();
        assert!(matches!(engine.pi_sweep(10, 20, anchor), Err(Error::Contract(_))));
    }

    #[test]
    fn sweep_crosses_segments() {
        let config = PiEngineConfig {
            sieve: Sieve::new(6, 1 << 20).unwrap(),
            ..Default::default()
        };
        let engine = PiEngine::new(config);
        let last = engine.sweep_from(1000, 5000).unwrap().finish().unwrap();
        assert_eq!(last, (5000, 669));
    }

    #[test]
    fn cache_is_used_and_recorded() {
        let engine = PiEngine::default();
        let first = engine.pi_exact(2_000_000).unwrap();
        assert_eq!(first.method, Method::Sieve);
        let near = engine.pi_exact(2_000_100).unwrap();
        assert_eq!(near.method, Method::Checkpoint);
        assert_eq!(near.pi, engine.pi_by(2_000_100, Method::Sieve).unwrap().pi);
        assert_eq!(engine.cached(2_000_000), Some(first.pi));
    }

    #[test]
    fn insert_anchor_rejects_inconsistency() {
        let engine = PiEngine::default();
        engine.insert_anchor(100, 25).unwrap();
        assert!(engine.insert_anchor(110, 40).is_err());
        assert!(engine.insert_anchor(100, 26).is_err());
        engine.insert_anchor(100, 25).unwrap();
    }
}
