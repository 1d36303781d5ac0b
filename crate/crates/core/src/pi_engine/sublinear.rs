//! Sublinear prime counting over the distinct quotients ⌊n/k⌋.
//!
//! `S(v)` starts as the count of integers in `[2, v]` and, after processing
//! each prime `p ≤ √n`, drops the numbers whose least prime factor is `p`:
//!
//! ```text
//! S(v) -= S(v / p) - S(p - 1)      for every tracked v ≥ p²
//! ```
//!
//! Only the O(√n) values `v = ⌊n/k⌋` are ever needed, giving O(n^{3/4}) time
//! and O(√n) memory. `small[v]` holds `S(v)` for `v ≤ √n`, `large[i]` holds
//! `S(n / i)`.

/// π(n) in O(n^{3/4}) time.
pub fn count_primes(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let r = n.isqrt() as usize;
    let mut small: Vec<u64> = (0..=r as u64).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r as u64)
        .map(|i| if i == 0 { 0 } else { n / i - 1 })
        .collect();

    for p in 2..=r {
        if small[p] == small[p - 1] {
            continue;
        }
        let below = small[p - 1];
        let pp = (p as u64) * (p as u64);
        let lim = (n / pp).min(r as u64) as usize;
        // large[d] for d = i·p ≤ r is still the previous round's value
        let direct = lim.min(r / p);
        for i in 1..=direct {
            large[i] -= large[i * p] - below;
        }
        for i in direct + 1..=lim {
            let q = n / (i as u64 * p as u64);
            large[i] -= small[q as usize] - below;
        }
        let stop = pp as usize;
        if stop <= r {
            for v in (stop..=r).rev() {
                small[v] -= small[v / p] - below;
            }
        }
    }
    large[1]
}
