//! Odd-only segmented sieve of Eratosthenes.
//!
//! Each segment stores one bit per odd integer, so a segment of `2^k` entries
//! spans `2^(k+1)` consecutive integers. The prime 2 is handled out of band.

use crate::error::{Error, Result};

/// Default number of odd entries per segment, as a power of two.
pub const DEFAULT_SEGMENT_BITS: u32 = 22;

/// Default ceiling on the memory a materialized [`PrimeBits`] may take.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 30;

/// Sieve configuration: segment size and the memory budget for
/// non-streaming results.
#[derive(Clone, Debug)]
pub struct Sieve {
    segment_bits: u32,
    memory_budget: usize,
}

impl Default for Sieve {
    fn default() -> Self {
        Sieve {
            segment_bits: DEFAULT_SEGMENT_BITS,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl Sieve {
    pub fn new(segment_bits: u32, memory_budget: usize) -> Result<Self> {
        if !(6..=30).contains(&segment_bits) {
            return Err(Error::domain(format!(
                "segment_bits must lie in [6, 30], got {segment_bits}"
            )));
        }
        Ok(Sieve {
            segment_bits,
            memory_budget,
        })
    }

    pub fn segment_bits(&self) -> u32 {
        self.segment_bits
    }

    fn segment_span(&self) -> u64 {
        2u64 << self.segment_bits
    }

    /// Materializes primality for every integer in `[0, limit]`.
    pub fn primes_up_to(&self, limit: u64) -> Result<PrimeBits> {
        let words = odd_index(limit) / 64 + 1;
        let bytes = words.saturating_mul(8);
        if bytes > self.memory_budget as u64 {
            return Err(Error::Resource(format!(
                "a bitset up to {limit} needs {bytes} bytes, over the budget of {} bytes; \
                 stream segments with for_each_segment instead",
                self.memory_budget
            )));
        }
        let mut odd = Vec::with_capacity(words as usize);
        self.for_each_segment(0, limit, |seg| {
            // segments start at even multiples of the span, so words line up
            odd.extend_from_slice(seg.words());
        });
        odd.resize(words as usize, 0);
        Ok(PrimeBits { limit, odd })
    }

    /// Number of primes in the inclusive range `[lo, hi]`.
    pub fn count_primes(&self, lo: u64, hi: u64) -> u64 {
        let mut total = 0;
        self.for_each_segment(lo, hi, |seg| total += seg.count());
        total
    }

    /// Streams the inclusive range `[lo, hi]` one segment at a time, in order.
    pub fn for_each_segment<F: FnMut(&Segment)>(&self, lo: u64, hi: u64, mut f: F) {
        if hi < lo {
            return;
        }
        let base = BasePrimes::up_to(hi.isqrt());
        let span = self.segment_span();
        let mut seg = Segment::empty();
        // the first segment starts at lo; later ones at multiples of the span
        let mut start = lo - lo % 2;
        loop {
            let end = segment_end(start, span, hi);
            seg.fill(start, end, lo.max(start), &base);
            f(&seg);
            if end >= hi {
                break;
            }
            start = end + 1;
        }
    }

    /// Segment-by-segment cursor over `[lo, hi]` for callers that pull.
    pub(crate) fn cursor(&self, lo: u64, hi: u64) -> SegmentCursor {
        SegmentCursor {
            base: BasePrimes::up_to(hi.isqrt()),
            span: self.segment_span(),
            next_start: lo - lo % 2,
            lo,
            hi,
            done: hi < lo,
        }
    }
}

fn segment_end(start: u64, span: u64, hi: u64) -> u64 {
    (start - start % span).saturating_add(span - 1).min(hi)
}

/// Primality of `[2, limit]` per the default sieve configuration.
pub fn sieve_primes(limit: u64) -> Result<PrimeBits> {
    Sieve::default().primes_up_to(limit)
}

#[inline]
fn odd_index(n: u64) -> u64 {
    n / 2
}

/// Odd primes up to some bound, used to cross off composites in segments.
#[derive(Debug)]
pub(crate) struct BasePrimes {
    primes: Vec<u64>,
}

impl BasePrimes {
    pub(crate) fn up_to(limit: u64) -> Self {
        if limit < 3 {
            return BasePrimes { primes: Vec::new() };
        }
        let len = (limit / 2 + 1) as usize;
        // composite[i] <-> 2i + 1
        let mut composite = vec![false; len];
        composite[0] = true;
        let mut i = 1;
        while (2 * i + 1) * (2 * i + 1) <= limit as usize {
            if !composite[i] {
                let p = 2 * i + 1;
                let mut j = p * p / 2;
                while j < len {
                    composite[j] = true;
                    j += p;
                }
            }
            i += 1;
        }
        let primes = composite
            .iter()
            .enumerate()
            .filter(|(i, c)| !**c && (2 * *i as u64 + 1) <= limit)
            .map(|(i, _)| 2 * i as u64 + 1)
            .collect();
        BasePrimes { primes }
    }
}

/// One sieved window. Bit `j` of the storage stands for the odd integer
/// `first_odd + 2j`; bits outside `[lo, hi]` are cleared.
#[derive(Debug)]
pub struct Segment {
    lo: u64,
    hi: u64,
    first_odd: u64,
    words: Vec<u64>,
}

impl Segment {
    fn empty() -> Self {
        Segment {
            lo: 1,
            hi: 0,
            first_odd: 1,
            words: Vec::new(),
        }
    }

    /// Sieves `[start, end]` for even `start`, then masks off everything
    /// below `lo`.
    fn fill(&mut self, start: u64, end: u64, lo: u64, base: &BasePrimes) {
        debug_assert!(start % 2 == 0);
        self.lo = lo;
        self.hi = end;
        self.first_odd = start + 1;
        let entries = (end + 1 - start) / 2;
        let nwords = entries.div_ceil(64) as usize;
        self.words.clear();
        self.words.resize(nwords, u64::MAX);
        let tail = entries % 64;
        if tail != 0 {
            *self.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        if self.first_odd == 1 && entries > 0 {
            self.clear_bit(0);
        }
        for &p in &base.primes {
            let pp = p * p;
            if pp > end {
                break;
            }
            let mut m = if pp >= start {
                pp
            } else {
                let r = start % p;
                let mut m = if r == 0 { start } else { start + p - r };
                if m % 2 == 0 {
                    m += p;
                }
                m
            };
            if m > end {
                continue;
            }
            m = (m - self.first_odd) / 2;
            let words = &mut self.words;
            let limit = entries;
            while m < limit {
                words[(m / 64) as usize] &= !(1u64 << (m % 64));
                m += p;
            }
        }
        // mask everything below lo
        if lo > self.first_odd {
            let below = (lo - self.first_odd).div_ceil(2).min(entries);
            let full = (below / 64) as usize;
            for w in &mut self.words[..full] {
                *w = 0;
            }
            let rem = below % 64;
            if rem != 0 {
                self.words[full] &= !((1u64 << rem) - 1);
            }
        }
    }

    #[inline]
    fn clear_bit(&mut self, j: u64) {
        self.words[(j / 64) as usize] &= !(1u64 << (j % 64));
    }

    /// Lower end of the covered range (inclusive).
    pub fn lo(&self) -> u64 {
        self.lo
    }

    /// Upper end of the covered range (inclusive).
    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn has_two(&self) -> bool {
        self.lo <= 2 && 2 <= self.hi
    }

    /// Primality of `n`, which must lie in `[lo, hi]`.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(self.lo <= n && n <= self.hi);
        if n % 2 == 0 {
            return n == 2;
        }
        let j = (n - self.first_odd) / 2;
        self.words[(j / 64) as usize] >> (j % 64) & 1 == 1
    }

    /// Number of primes in `[lo, hi]`.
    pub fn count(&self) -> u64 {
        let odd: u64 = self.words.iter().map(|w| w.count_ones() as u64).sum();
        odd + self.has_two() as u64
    }

    /// Primes of the segment in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = self.has_two().then_some(2);
        let first_odd = self.first_odd;
        two.into_iter()
            .chain(self.words.iter().enumerate().flat_map(move |(wi, &w)| {
                BitIter(w).map(move |b| first_odd + 2 * (wi as u64 * 64 + b as u64))
            }))
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Pull-based segment producer backing the π sweep.
#[derive(Debug)]
pub(crate) struct SegmentCursor {
    base: BasePrimes,
    span: u64,
    next_start: u64,
    lo: u64,
    hi: u64,
    done: bool,
}

impl SegmentCursor {
    /// Sieves the next segment into `seg`; false once the range is exhausted.
    pub(crate) fn advance(&mut self, seg: &mut Segment) -> bool {
        if self.done {
            return false;
        }
        let start = self.next_start;
        let end = segment_end(start, self.span, self.hi);
        seg.fill(start, end, self.lo.max(start), &self.base);
        if end >= self.hi {
            self.done = true;
        } else {
            self.next_start = end + 1;
        }
        true
    }

    pub(crate) fn new_segment() -> Segment {
        Segment::empty()
    }
}

/// Primality of every integer in `[0, limit]`, one bit per odd number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBits {
    limit: u64,
    odd: Vec<u64>,
}

impl PrimeBits {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n > self.limit {
            return false;
        }
        if n % 2 == 0 {
            return n == 2;
        }
        let j = n / 2;
        self.odd[(j / 64) as usize] >> (j % 64) & 1 == 1
    }

    /// Number of primes ≤ limit.
    pub fn count(&self) -> u64 {
        let odd: u64 = self.odd.iter().map(|w| w.count_ones() as u64).sum();
        odd + (self.limit >= 2) as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.limit >= 2).then_some(2);
        two.into_iter()
            .chain(self.odd.iter().enumerate().flat_map(|(wi, &w)| {
                BitIter(w).map(move |b| 2 * (wi as u64 * 64 + b as u64) + 1)
            }))
            .take_while(move |&p| p <= self.limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn first_primes() {
        let bits = sieve_primes(10).unwrap();
        assert_eq!(bits.iter().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn tiny_limits_are_empty() {
        assert_eq!(sieve_primes(0).unwrap().count(), 0);
        assert_eq!(sieve_primes(1).unwrap().count(), 0);
        assert!(!sieve_primes(1).unwrap().is_prime(1));
    }

    #[test]
    fn small_segments_match_naive() {
        let sieve = Sieve::new(6, DEFAULT_MEMORY_BUDGET).unwrap();
        let expect = naive(7000);
        let bits = sieve.primes_up_to(5000).unwrap();
        assert_eq!(bits.iter().collect::<Vec<_>>(), naive(5000));
        for lo in [0u64, 1, 2, 3, 4, 97, 128, 129, 1000, 4999] {
            for hi in [lo, lo + 1, lo + 127, lo + 128, lo + 1001] {
                let want = expect.iter().filter(|&&p| lo <= p && p <= hi).count() as u64;
                assert_eq!(sieve.count_primes(lo, hi), want, "[{lo}, {hi}]");
                let mut got = Vec::new();
                sieve.for_each_segment(lo, hi, |s| got.extend(s.primes()));
                assert_eq!(got.len() as u64, want);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let sieve = Sieve::new(16, 1024).unwrap();
        assert!(matches!(sieve.primes_up_to(1 << 20), Err(Error::Resource(_))));
        assert!(sieve.primes_up_to(10_000).is_ok());
    }

    #[test]
    fn rejects_bad_segment_bits() {
        assert!(Sieve::new(5, 1).is_err());
        assert!(Sieve::new(31, 1).is_err());
    }
}
