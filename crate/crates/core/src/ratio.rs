//! Exact nonnegative rationals.
//!
//! Every distortion value in the crate is a quotient of two lattice lengths,
//! so a reduced `u64` fraction is enough. Comparisons cross-multiply in
//! `u128` and are therefore exact for the full `u64` range.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    num: u64,
    den: u64,
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num as u128, den as u128) as u64;
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    /// Reduces a `u128` fraction, returning `None` if the reduced form does
    /// not fit in `u64`.
    pub fn from_u128(num: u128, den: u128) -> Option<Self> {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let (n, d) = (num / g, den / g);
        Some(Ratio {
            num: u64::try_from(n).ok()?,
            den: u64::try_from(d).ok()?,
        })
    }

    /// Const constructor; the caller guarantees lowest terms and `den > 0`.
    pub const fn new_const(num: u64, den: u64) -> Self {
        Ratio { num, den }
    }

    pub const fn integer(n: u64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn checked_add(self, other: Ratio) -> Option<Ratio> {
        let num = self.num as u128 * other.den as u128 + other.num as u128 * self.den as u128;
        let den = self.den as u128 * other.den as u128;
        Ratio::from_u128(num, den)
    }

    pub fn checked_mul(self, other: Ratio) -> Option<Ratio> {
        Ratio::from_u128(
            self.num as u128 * other.num as u128,
            self.den as u128 * other.den as u128,
        )
    }

    /// Compares `self` against `num/den` without reducing the right side.
    #[inline]
    pub fn cmp_fraction(self, num: u64, den: u64) -> Ordering {
        (self.num as u128 * den as u128).cmp(&(num as u128 * self.den as u128))
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Fixed-point rendering with round-half-to-even on the last digit.
    pub fn to_decimal(self, places: u32) -> String {
        let scale = 10u128.pow(places);
        let scaled = self.num as u128 * scale;
        let den = self.den as u128;
        let mut q = scaled / den;
        let r = scaled % den;
        match (2 * r).cmp(&den) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q % 2 == 1 => q += 1,
            _ => {}
        }
        let int = q / scale;
        let frac = q % scale;
        if places == 0 {
            int.to_string()
        } else {
            format!("{int}.{frac:0width$}", width = places as usize)
        }
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_fraction(other.num, other.den)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ratio {
    fn from(n: u64) -> Self {
        Ratio::integer(n)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
