use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rat, HalfInt, Rat, ShiftBase};
use crate::error::{Error, Result};

/// A power series in `u` known modulo `u^order`.
///
/// `coeffs` always has exactly `order` entries. When the series is known to be
/// a polynomial of degree `< order` (so no information was lost to
/// truncation) `poly_deg` records that degree bound.
#[derive(Clone)]
pub struct Series {
    coeffs: Vec<Rat>,
    poly_deg: Option<usize>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order],
            poly_deg: Some(0),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The series `c u^k`.
    pub fn monomial(c: Rat, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
            s.poly_deg = Some(k);
        } else {
            s.poly_deg = None;
        }
        s
    }

    /// Builds the series of the polynomial `Σ coeffs[k] u^k`, truncated to `order`.
    pub fn from_coeffs(coeffs: Vec<Rat>, order: usize) -> Self {
        let deg = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        let exact = coeffs.len() <= order || coeffs[order..].iter().all(Zero::is_zero);
        let mut coeffs = coeffs;
        coeffs.resize(order, Rat::zero());
        Series {
            coeffs,
            poly_deg: if exact && deg < order.max(1) { Some(deg) } else { None },
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// True when the value is a polynomial captured without truncation loss.
    pub fn is_exact(&self) -> bool {
        self.poly_deg.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient below the truncation order.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        if order >= self.order() {
            return self.clone();
        }
        let coeffs = self.coeffs[..order].to_vec();
        let exact = self.poly_deg.is_some_and(|d| d < order.max(1));
        Series {
            coeffs,
            poly_deg: if exact { self.poly_deg } else { None },
        }
    }

    /// `f^{[a]}`: the coefficient of `u^k` is multiplied by `q^{a k}`.
    pub fn shift(&self, a: HalfInt, base: &ShiftBase) -> Series {
        if a == HalfInt::ZERO {
            return self.clone();
        }
        let factor = base.q_pow(a);
        let mut p = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &p;
                p *= &factor;
                v
            })
            .collect();
        Series {
            coeffs,
            poly_deg: self.poly_deg,
        }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(self.order());
        }
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            poly_deg: self.poly_deg,
        }
    }

    pub fn add_ref(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        let coeffs: Vec<Rat> = (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect();
        let poly_deg = match (self.poly_deg, o.poly_deg) {
            (Some(a), Some(b)) if a.max(b) < n.max(1) => Some(a.max(b)),
            _ => None,
        };
        Series { coeffs, poly_deg }
    }

    pub fn sub_ref(&self, o: &Series) -> Series {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            poly_deg: self.poly_deg,
        }
    }

    pub fn mul_ref(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        let mut coeffs = vec![Rat::zero(); n];
        let la = self.coeffs.iter().rposition(|c| !c.is_zero());
        let lb = o.coeffs.iter().rposition(|c| !c.is_zero());
        if let (Some(la), Some(lb)) = (la, lb) {
            for i in 0..=la.min(n.saturating_sub(1)) {
                let a = &self.coeffs[i];
                if a.is_zero() {
                    continue;
                }
                for j in 0..=lb.min(n - 1 - i) {
                    let b = &o.coeffs[j];
                    if !b.is_zero() {
                        coeffs[i + j] += a * b;
                    }
                }
            }
        }
        let poly_deg = match (self.poly_deg, o.poly_deg) {
            (Some(a), Some(b)) if a + b < n.max(1) => Some(a + b),
            _ if self.is_zero() || o.is_zero() => Some(0),
            _ => None,
        };
        Series { coeffs, poly_deg }
    }

    /// Multiplicative inverse modulo `u^order`.
    pub fn inv(&self) -> Result<Series> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let c0_inv = c0.recip();
        let mut out = vec![Rat::zero(); n];
        out[0] = c0_inv.clone();
        for k in 1..n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out[k] = -(acc * &c0_inv);
        }
        let constant = self.poly_deg == Some(0);
        Ok(Series {
            coeffs: out,
            poly_deg: if constant { Some(0) } else { None },
        })
    }

    /// `self^e`; negative exponents require an invertible constant term.
    pub fn pow(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Series::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }
}

impl PartialEq for Series {
    fn eq(&self, o: &Series) -> bool {
        self.coeffs == o.coeffs
    }
}

impl Eq for Series {}

impl std::hash::Hash for Series {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rat(c))?,
                1 => write!(f, "({})u", format_rat(c))?,
                _ => write!(f, "({})u^{k}", format_rat(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(u^{})", self.order())?;
        }
        Ok(())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.add_ref(o)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.sub_ref(o)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.mul_ref(o)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}
