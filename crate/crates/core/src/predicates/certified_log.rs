//! Interval enclosures of ln(n) for integers n ≥ 2.
//!
//! Every floor or ceiling the divisibility criteria take of `ln n + s` uses a
//! shift `s` that is a whole number of tenths. All of them therefore follow
//! from the single integer `D = ⌊10 ln n⌋`:
//!
//! ```text
//! ⌊ln n + t/10⌋ = ⌊(D + t) / 10⌋
//! ⌈ln n + t/10⌉ = ⌊(D + t) / 10⌋ + 1      (10 ln n is never an integer)
//! ```
//!
//! A [`CertifiedLog`] is an enclosure tight enough that `⌊10·lo⌋ = ⌊10·hi⌋`.
//!
//! Two tiers produce enclosures:
//!
//! * 53 bits: the platform `ln` on an `f64` image of n, widened by a radius
//!   of `2^-44·|ln n| + 2^-50`. That is several hundred times the combined
//!   error of the integer-to-float conversion and a faithfully rounded `ln`.
//! * 128 bits and up: fixed-point big-integer arithmetic with an explicit
//!   error count, `ln n = e·ln 2 + 2·atanh((m−1)/(m+1))` where
//!   `n = m·2^e`, `m ∈ [1/√2, √2)`, and `ln 2 = 2·atanh(1/3)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::natural::Natural;
use crate::error::{Error, Result};

/// Mantissa bits of the hardware tier.
pub const DOUBLE_BITS: u32 = 53;

/// A shift of a whole number of tenths applied to ln n before a floor or
/// ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tenths(pub i32);

impl Tenths {
    pub const ZERO: Tenths = Tenths(0);
    pub const MINUS_TENTH: Tenths = Tenths(-1);
    pub const MINUS_HALF: Tenths = Tenths(-5);
    pub const MINUS_ONE: Tenths = Tenths(-10);
    pub const MINUS_ONE_TENTH: Tenths = Tenths(-11);
    pub const MINUS_ONE_HALF: Tenths = Tenths(-15);

    /// The offsets the divisibility criteria use.
    pub const STANDARD: [Tenths; 6] = [
        Tenths::ZERO,
        Tenths::MINUS_TENTH,
        Tenths::MINUS_HALF,
        Tenths::MINUS_ONE,
        Tenths::MINUS_ONE_TENTH,
        Tenths::MINUS_ONE_HALF,
    ];

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10.0
    }
}

/// Where precision starts and where escalation gives up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: DOUBLE_BITS,
            cap_bits: 4096,
        }
    }
}

impl PrecisionPolicy {
    pub fn with_cap(cap_bits: u32) -> Self {
        PrecisionPolicy {
            cap_bits,
            ..Default::default()
        }
    }

    /// Both the starting precision and the cap doubled. The first tier then
    /// runs on big integers instead of hardware floats.
    pub fn doubled(self) -> Self {
        PrecisionPolicy {
            start_bits: self.start_bits * 2,
            cap_bits: self.cap_bits * 2,
        }
    }

    /// The precisions tried in order: 53 → 128 → 256 → … up to the cap, or
    /// doubling from `start_bits` when it is above the hardware tier.
    pub fn schedule(self) -> impl Iterator<Item = u32> {
        let first = self.start_bits.max(1);
        let cap = self.cap_bits;
        std::iter::successors(Some(first), |&b| {
            Some(if b <= DOUBLE_BITS { 128 } else { b.saturating_mul(2) })
        })
        .take_while(move |&b| b <= cap)
    }
}

#[derive(Clone, Debug)]
enum Bounds {
    Double { lo: f64, hi: f64 },
    Fixed { lo: BigInt, hi: BigInt, frac_bits: u32 },
}

/// `lo < ln n < hi` at one precision level; not necessarily decisive.
#[derive(Clone, Debug)]
pub struct LogEnclosure {
    bits: u32,
    bounds: Bounds,
}

impl LogEnclosure {
    /// Encloses ln n at roughly `bits` bits of absolute accuracy. `n ≥ 2`.
    pub fn compute(n: &Natural, bits: u32) -> LogEnclosure {
        debug_assert!(n.bits() >= 2);
        if bits <= DOUBLE_BITS {
            let est = ln_double(n);
            let rad = est.abs() * (-44f64).exp2() + (-50f64).exp2();
            LogEnclosure {
                bits: DOUBLE_BITS,
                bounds: Bounds::Double {
                    lo: (est - rad).next_down(),
                    hi: (est + rad).next_up(),
                },
            }
        } else {
            let (mid, rad, frac_bits) = ln_fixed(&n.to_biguint(), bits);
            LogEnclosure {
                bits,
                bounds: Bounds::Fixed {
                    lo: &mid - &rad,
                    hi: mid + rad,
                    frac_bits,
                },
            }
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> BigRational {
        match &self.bounds {
            Bounds::Double { lo, .. } => BigRational::from_float(*lo).unwrap(),
            Bounds::Fixed { lo, frac_bits, .. } => dyadic(lo.clone(), *frac_bits),
        }
    }

    pub fn upper(&self) -> BigRational {
        match &self.bounds {
            Bounds::Double { hi, .. } => BigRational::from_float(*hi).unwrap(),
            Bounds::Fixed { hi, frac_bits, .. } => dyadic(hi.clone(), *frac_bits),
        }
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        match &self.bounds {
            Bounds::Double { lo, hi } => (lo + hi) / 2.0,
            Bounds::Fixed { lo, hi, frac_bits } => {
                let mid: BigInt = (lo + hi) >> 1usize;
                dyadic(mid, *frac_bits).to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// `⌊scale · x⌋` for every x in the enclosure, if that is one integer.
    pub fn floor_scaled(&self, scale: &BigUint) -> Option<BigInt> {
        match &self.bounds {
            Bounds::Double { lo, hi } => {
                let s = scale.to_f64().filter(|s| *s < 4.0e15)?;
                double_floor(*lo, *hi, s).map(BigInt::from)
            }
            Bounds::Fixed { lo, hi, frac_bits } => {
                let scale = BigInt::from(scale.clone());
                let den = BigInt::one() << *frac_bits as usize;
                let a = (lo * &scale).div_floor(&den);
                let b = (hi * &scale).div_floor(&den);
                (a == b).then_some(a)
            }
        }
    }

    /// `⌊10 ln n⌋` if the enclosure decides it.
    pub fn tenfold_floor(&self) -> Option<i64> {
        match &self.bounds {
            Bounds::Double { lo, hi } => double_floor(*lo, *hi, 10.0),
            Bounds::Fixed { .. } => self
                .floor_scaled(&BigUint::from(10u32))
                .and_then(|d| d.to_i64()),
        }
    }

    /// ln n truncated to `digits` decimals when the enclosure fixes them.
    pub fn truncated_decimal(&self, digits: u32) -> Option<String> {
        let pow = BigUint::from(10u32).pow(digits);
        let scaled = self.floor_scaled(&pow)?;
        let mag = scaled.magnitude();
        let (int, frac) = mag.div_rem(&pow);
        Some(if digits == 0 {
            int.to_string()
        } else {
            format!("{int}.{frac:0>width$}", width = digits as usize)
        })
    }
}

/// Common floor of `scale·lo` and `scale·hi`, widened by one ulp each way.
fn double_floor(lo: f64, hi: f64, scale: f64) -> Option<i64> {
    let a = (lo * scale).next_down().floor();
    let b = (hi * scale).next_up().floor();
    // beyond 2^52 the float product no longer resolves integers
    (a == b && a.abs() < 4.0e15).then_some(a as i64)
}

fn dyadic(num: BigInt, frac_bits: u32) -> BigRational {
    BigRational::new(num, BigInt::one() << frac_bits as usize)
}

fn ln_double(n: &Natural) -> f64 {
    match n {
        Natural::Word(v) => (*v as f64).ln(),
        Natural::Big(b) => {
            let shift = b.bits() - 64;
            let top = (b >> shift).to_u64().unwrap();
            (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// `Σ z^{2i+1}/(2i+1)` in fixed point with `w` fractional bits, for
/// `|z| ≤ 1/3`. Returns the sum and an upper bound on its error in ulps
/// (excluding the error already present in `z`).
fn atanh_series(z: &BigInt, w: u32) -> (BigInt, u64) {
    if z.is_negative() {
        // odd function; shifting a negative term would stall at −1
        let (sum, err) = atanh_series(&-z, w);
        return (-sum, err);
    }
    let z2: BigInt = (z * z) >> w as usize;
    let mut term = z.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    let mut steps: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = (&term * &z2) >> w as usize;
        k += 2;
        steps += 1;
    }
    // per step: one ulp from the division, under two from the running power
    // (its error contracts by z² ≤ 1/9); the tail is below one ulp
    (sum, 3 * steps + 4)
}

fn ln2_fixed(w: u32) -> (BigInt, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigInt, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&w) {
        return hit.clone();
    }
    let one = BigInt::one() << w as usize;
    let third = &one / 3;
    let (s, err) = atanh_series(&third, w);
    // z = 1/3 is truncated by under one ulp; d(2 atanh z)/dz = 2.25 there
    let value = (s << 1usize, 2 * err + 3);
    cache.lock().unwrap().insert(w, value.clone());
    value
}

/// ln n in fixed point: `(mid, radius, frac_bits)` with
/// `mid − radius < ln(n)·2^frac_bits < mid + radius`.
fn ln_fixed(n: &BigUint, bits: u32) -> (BigInt, BigInt, u32) {
    let k = n.bits() - 1;
    // e chosen so that m = n / 2^e lies in [1/√2, √2)
    let e = if n * n >= BigUint::one() << (2 * k + 1) {
        k + 1
    } else {
        k
    };
    let w = bits + 32 + (64 - e.leading_zeros());
    let n = BigInt::from(n.clone());
    let m = if w as u64 >= e {
        n << (w as u64 - e) as usize
    } else {
        n >> (e - w as u64) as usize
    };
    let one = BigInt::one() << w as usize;
    let z = ((&m - &one) << w as usize) / (&m + &one);
    let (s, series_err) = atanh_series(&z, w);
    let ln_m = s << 1usize;
    // m truncated (under 1 ulp, dz/dm < 0.7) and z truncated (under 1 ulp);
    // d(2 atanh z)/dz < 2.1 for |z| < 0.172
    let ln_m_err = 2 * series_err + 5;

    let (ln2, ln2_err) = ln2_fixed(w);
    let mid = ln2 * BigInt::from(e) + ln_m;
    let radius = BigInt::from(e) * BigInt::from(ln2_err) + BigInt::from(ln_m_err) + 1;
    (mid, radius, w)
}

/// An enclosure of ln n that decides `⌊10 ln n⌋`, and with it every floor
/// and ceiling of `ln n + t/10`.
#[derive(Clone, Debug)]
pub struct CertifiedLog {
    n: Natural,
    enclosure: LogEnclosure,
    tenfold_floor: i64,
}

impl CertifiedLog {
    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn enclosure(&self) -> &LogEnclosure {
        &self.enclosure
    }

    pub fn precision_bits(&self) -> u32 {
        self.enclosure.bits
    }

    /// `⌊10 ln n⌋`.
    pub fn tenfold_floor(&self) -> i64 {
        self.tenfold_floor
    }

    /// `⌊ln n + shift⌋`.
    pub fn floor_shifted(&self, shift: Tenths) -> i64 {
        (self.tenfold_floor + shift.0 as i64).div_euclid(10)
    }

    /// `⌈ln n + shift⌉`.
    pub fn ceil_shifted(&self, shift: Tenths) -> i64 {
        self.floor_shifted(shift) + 1
    }

    /// `⌊ln n⌋`.
    pub fn integer_part(&self) -> i64 {
        self.floor_shifted(Tenths::ZERO)
    }

    /// First decimal digit of frac(ln n), i.e. `⌊10 ln n − 10⌊ln n⌋⌋`.
    pub fn frac_digit(&self) -> u8 {
        self.tenfold_floor.rem_euclid(10) as u8
    }

    /// frac(ln n) < 0.1; equality is impossible for integer n > 1.
    pub fn frac_below_tenth(&self) -> bool {
        self.frac_digit() == 0
    }

    /// Midpoint estimate of ln n, for display.
    pub fn approx(&self) -> f64 {
        self.enclosure.approx()
    }
}

/// Encloses ln n, escalating precision until every requested floor of
/// `ln n + shift` (and `⌊10 ln n⌋` itself) is unambiguous.
pub fn certified_log(
    n: impl Into<Natural>,
    shifts: &[Tenths],
    policy: PrecisionPolicy,
) -> Result<CertifiedLog> {
    let n = n.into();
    if n < Natural::Word(2) {
        return Err(Error::domain(format!(
            "ln n is certified only for integers n ≥ 2, got {n}"
        )));
    }
    for enclosure in policy.schedule().map(|bits| LogEnclosure::compute(&n, bits)) {
        let Some(d) = enclosure.tenfold_floor() else {
            continue;
        };
        // with ⌊10 ln n⌋ pinned, every shift by whole tenths is pinned too,
        // so `shifts` needs no further precision
        let _ = shifts;
        return Ok(CertifiedLog {
            n,
            enclosure,
            tenfold_floor: d,
        });
    }
    Err(Error::PrecisionExhausted {
        n: n.to_string(),
        cap_bits: policy.cap_bits,
    })
}
