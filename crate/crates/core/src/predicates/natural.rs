use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

/// A positive or zero integer of any size. Values that fit in a `u64` are
/// always stored inline, so equality and ordering are structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Natural {
    Word(u64),
    Big(BigUint),
}

impl Natural {
    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Natural::Word(v) => Some(*v),
            Natural::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Natural::Word(v) => BigUint::from(*v),
            Natural::Big(b) => b.clone(),
        }
    }

    pub fn bits(&self) -> u64 {
        match self {
            Natural::Word(v) => 64 - v.leading_zeros() as u64,
            Natural::Big(b) => b.bits(),
        }
    }

    pub fn rem_u64(&self, d: u64) -> u64 {
        match self {
            Natural::Word(v) => v % d,
            Natural::Big(b) => (b % d).to_u64().unwrap(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Natural::Word(0))
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural::Word(v)
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural::Word(v as u64)
    }
}

impl From<BigUint> for Natural {
    fn from(b: BigUint) -> Self {
        match b.to_u64() {
            Some(v) => Natural::Word(v),
            None => Natural::Big(b),
        }
    }
}

impl From<&Natural> for Natural {
    fn from(n: &Natural) -> Self {
        n.clone()
    }
}

impl FromStr for Natural {
    type Err = Error;

    /// Decimal digits only; no sign, no separators.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Usage(format!("expected a decimal integer, got {s:?}")));
        }
        let b = BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| Error::Usage(format!("expected a decimal integer, got {s:?}")))?;
        Ok(if b.is_zero() { Natural::Word(0) } else { b.into() })
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Natural::Word(v) => write!(f, "{v}"),
            Natural::Big(b) => write!(f, "{b}"),
        }
    }
}

impl serde::Serialize for Natural {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Natural::Word(v) => s.serialize_u64(*v),
            Natural::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}
