use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{HalfInt, Rat, Series, ShiftBase};
use crate::error::{Error, Result};

/// A quotient `num / den` of truncated series.
///
/// Whenever `den` has a nonzero constant term the value is kept in the
/// reduced form `num * den^{-1} / 1`; otherwise both parts are carried and
/// equality is only ever decided by cross-multiplication.
#[derive(Clone, PartialEq, Eq)]
pub struct Frac {
    num: Series,
    den: Series,
}

impl Frac {
    pub fn new(num: Series, den: Series) -> Self {
        Frac { num, den }.reduced()
    }

    pub fn from_series(num: Series) -> Self {
        let order = num.order();
        Frac {
            num,
            den: Series::one(order),
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        Self::from_series(Series::constant(c, order))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_series(Series::zero(order))
    }

    pub fn one(order: usize) -> Self {
        Self::from_series(Series::one(order))
    }

    pub fn num(&self) -> &Series {
        &self.num
    }

    pub fn den(&self) -> &Series {
        &self.den
    }

    pub fn order(&self) -> usize {
        self.num.order().min(self.den.order())
    }

    fn reduced(self) -> Self {
        if self.den.constant_term().is_zero() || self.den == Series::one(self.den.order()) {
            return self;
        }
        // den(0) != 0 so the inverse exists
        let inv = self.den.inv().expect("invertible denominator");
        let num = self.num.mul_ref(&inv);
        let order = num.order();
        Frac {
            num,
            den: Series::one(order),
        }
    }

    /// True when the denominator is the constant 1.
    pub fn is_series(&self) -> bool {
        self.den == Series::one(self.den.order())
    }

    /// The value as a series, when the denominator is invertible.
    pub fn to_series(&self) -> Result<Series> {
        Ok(self.num.mul_ref(&self.den.inv()?))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn shift(&self, a: HalfInt, base: &ShiftBase) -> Frac {
        Frac {
            num: self.num.shift(a, base),
            den: self.den.shift(a, base),
        }
    }

    pub fn scale(&self, c: &Rat) -> Frac {
        Frac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add_ref(&self, o: &Frac) -> Frac {
        if self.is_series() && o.is_series() {
            return Frac::from_series(self.num.add_ref(&o.num));
        }
        Frac::new(
            self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den)),
            self.den.mul_ref(&o.den),
        )
    }

    pub fn sub_ref(&self, o: &Frac) -> Frac {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Frac {
        Frac {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, o: &Frac) -> Frac {
        if self.is_series() && o.is_series() {
            return Frac::from_series(self.num.mul_ref(&o.num));
        }
        Frac::new(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }

    pub fn mul_series(&self, s: &Series) -> Frac {
        Frac::new(self.num.mul_ref(s), self.den.clone())
    }

    /// `1 / self`. Fails only when the numerator is identically zero.
    pub fn inv(&self) -> Result<Frac> {
        if self.num.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(Frac::new(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &Frac) -> Result<Frac> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Frac> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Frac::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// `num(x) den(y) - num(y) den(x)` modulo `u^O`.
    pub fn residual(&self, o: &Frac) -> Series {
        self.num
            .mul_ref(&o.den)
            .sub_ref(&o.num.mul_ref(&self.den))
    }

    /// Equality by cross-multiplication modulo `u^O`.
    pub fn frac_equal(&self, o: &Frac) -> bool {
        self.residual(o).is_zero()
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_series() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, o: &Frac) -> Frac {
        self.add_ref(o)
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, o: &Frac) -> Frac {
        self.sub_ref(o)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, o: &Frac) -> Frac {
        self.mul_ref(o)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(cs: &[i64], order: usize) -> Series {
        Series::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect(), order)
    }

    #[test]
    fn common_factor_cancels() {
        let f = poly(&[0, 2, 1], 6);
        let g = poly(&[0, 0, 1, 3], 6);
        let h = poly(&[0, 1, -1], 6);
        let x = Frac { num: f.clone(), den: g.clone() };
        let y = Frac { num: f.mul_ref(&h), den: g.mul_ref(&h) };
        assert!(x.frac_equal(&y));
    }

    #[test]
    fn geometric_fraction() {
        let x = Frac::new(Series::one(6), poly(&[1, 1], 6));
        let y = Frac::new(poly(&[1, -1], 6), poly(&[1, 0, -1], 6));
        assert!(x.frac_equal(&y));
        assert!(x.is_series());
    }

    #[test]
    fn distinct_random_fractions_differ() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sample = || {
            let cs = (0..4)
                .map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=3)))
                .collect();
            Series::from_coeffs(cs, 4)
        };
        let mut found = 0;
        for _ in 0..20 {
            let x = Frac { num: sample(), den: sample() };
            let y = Frac { num: sample(), den: sample() };
            if let Some(k) = x.residual(&y).first_nonzero() {
                assert!(!x.frac_equal(&y));
                assert!(k < 4);
                found += 1;
            }
        }
        assert!(found > 15);
    }

    #[test]
    fn zero_constant_denominator_is_kept() {
        let x = Frac::new(poly(&[0, 1], 4), poly(&[0, 2], 4));
        assert!(!x.is_series());
        assert!(x.frac_equal(&Frac::constant(rat(1, 2), 4)));
        assert!(Frac::zero(3).inv().is_err());
    }
}
