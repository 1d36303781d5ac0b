//! Oracles written independently of the library: a plain byte-per-integer
//! sieve, trial division, and float logarithms that refuse to answer near
//! a floor boundary.

#![allow(dead_code)]

/// `is_prime[n]` for n in `[0, limit]`.
pub fn plain_sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2;
    while p * p <= limit {
        if is_prime[p] {
            for m in (p * p..=limit).step_by(p) {
                is_prime[m] = false;
            }
        }
        p += 1;
    }
    is_prime
}

/// π(n) for every n in `[0, limit]`.
pub fn plain_pi_table(limit: usize) -> Vec<u64> {
    let mut count = 0;
    plain_sieve(limit)
        .into_iter()
        .map(|p| {
            count += p as u64;
            count
        })
        .collect()
}

pub fn is_prime_td(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `⌊x⌋` when x is at least `margin` away from an integer, else None.
pub fn safe_floor(x: f64, margin: f64) -> Option<i64> {
    let f = x.floor();
    (x - f > margin && f + 1.0 - x > margin).then_some(f as i64)
}

/// `⌊ln n + t⌋` from a float logarithm, refusing near-boundary cases.
pub fn float_floor_shifted(n: u64, t: f64) -> Option<i64> {
    safe_floor((n as f64).ln() + t, 1e-9)
}

/// π(n) | n over a range, found by testing every integer against a plain
/// sieve table.
pub fn brute_solutions(table: &[u64], lo: u64, hi: u64) -> Vec<(u64, u64)> {
    (lo..=hi)
        .filter_map(|n| {
            let pi = table[n as usize];
            (pi > 0 && n % pi == 0).then_some((n, pi))
        })
        .collect()
}
