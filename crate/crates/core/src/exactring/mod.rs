//! Exact rationals, half-integer multiplicative shifts, truncated power series
//! in the spectral variable `u`, their fraction field and determinants.
//!
//! A shift `f^{[a]}` means `f(u q^a)` with `q = t^2`; `a` is always a
//! half-integer, so the coefficient of `u^k` picks up the exact factor
//! `t^{2ak}`.

mod frac;
mod linsolve;
mod matrix;
mod series;

pub use frac::Frac;
pub use linsolve::{identity, mat_vec, solve_linear, LinearSolution};
pub use matrix::{det, det_series, FracMatrix};
pub use series::Series;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `x^e` for any integer exponent; `x` must be nonzero when `e < 0`.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub const fn int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    /// `n + 1/2`
    pub const fn half(n: i64) -> Self {
        HalfInt { doubled: 2 * n + 1 }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + o.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - o.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// The exact value `t = q^{1/2}` realizing half-integer shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftBase {
    t: Rat,
}

impl ShiftBase {
    pub fn new(t: Rat) -> Result<Self> {
        if t.is_zero() || t.abs().is_one() {
            return Err(Error::InvalidShiftBase(format_rat(&t)));
        }
        Ok(ShiftBase { t })
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn q(&self) -> Rat {
        &self.t * &self.t
    }

    /// `q^a = t^{2a}`
    pub fn q_pow(&self, a: HalfInt) -> Rat {
        rat_pow(&self.t, a.doubled())
    }
}

impl Default for ShiftBase {
    fn default() -> Self {
        ShiftBase { t: rat_int(2) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_base_rejects_roots_of_unity() {
        assert!(ShiftBase::new(rat_int(0)).is_err());
        assert!(ShiftBase::new(rat_int(1)).is_err());
        assert!(ShiftBase::new(rat_int(-1)).is_err());
        assert_eq!(ShiftBase::default().q(), rat_int(4));
        assert_eq!(ShiftBase::default().q_pow(HalfInt::half(0)), rat_int(2));
    }

    #[test]
    fn half_int_arithmetic() {
        let a = HalfInt::half(1);
        assert_eq!((a + a), HalfInt::int(3));
        assert_eq!((-a).to_string(), "-3/2");
        assert!(HalfInt::int(4).is_integer());
    }

    #[test]
    fn rat_roundtrip() {
        for s in ["3", "-7/2", "0", "12/9"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
        }
        assert_eq!(format_rat(&parse_rat("12/9").unwrap()), "4/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
    }
}
