//! Determinants over single-column T-functions for rectangular diagrams.

use std::collections::HashMap;
use std::sync::Mutex;

use super::{t_br, t_column, BrFamily, TTable};
use crate::error::{Error, Result};
use crate::exactring::{det, Frac, HalfInt};
use crate::report::{Params, Report, Tag};

/// Which of the equivalent determinant layouts to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CbrVariant {
    /// Shifts decreasing along rows and columns, spinor column last.
    DecSpinLast,
    /// Shifts increasing along rows and columns, spinor column first.
    IncSpinFirst,
    /// Increasing shifts with the spinor column last; odd spin labels only.
    IncSpinLast,
    /// Decreasing shifts with the spinor column first; odd spin labels only.
    DecSpinFirst,
}

impl CbrVariant {
    pub const ALL: [CbrVariant; 4] = [CbrVariant::DecSpinLast, CbrVariant::IncSpinFirst, CbrVariant::IncSpinLast, CbrVariant::DecSpinFirst];

    pub fn name(self) -> &'static str {
        match self {
            CbrVariant::DecSpinLast => "dec-last",
            CbrVariant::IncSpinFirst => "inc-first",
            CbrVariant::IncSpinLast => "inc-last",
            CbrVariant::DecSpinFirst => "dec-first",
        }
    }

    /// Whether the layout exists for `(a, s)` in a rank-`r` family.
    pub fn applies(self, r: i64, a: i64, s: i64) -> bool {
        match self {
            CbrVariant::DecSpinLast | CbrVariant::IncSpinFirst => true,
            CbrVariant::IncSpinLast | CbrVariant::DecSpinFirst => a == r && s % 2 == 1,
        }
    }
}

/// Shifted copies of `𝖳_{k,1}` and `𝕋_{r,1}` computed once.
pub struct Columns<'a> {
    f: &'a BrFamily,
    cols: Mutex<HashMap<i64, Frac>>,
    spin: Mutex<Option<Frac>>,
}

impl<'a> Columns<'a> {
    pub fn new(f: &'a BrFamily) -> Self {
        Columns { f, cols: Mutex::new(HashMap::new()), spin: Mutex::new(None) }
    }

    /// `𝖳_{k,1}^{[d/2]}`
    pub fn column(&self, k: i64, doubled: i64) -> Result<Frac> {
        let cached = self.cols.lock().expect("column cache").get(&k).cloned();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = t_column(self.f, k)?;
                self.cols.lock().expect("column cache").insert(k, v.clone());
                v
            }
        };
        Ok(v.shift(HalfInt::from_doubled(doubled), self.f.base()))
    }

    /// `𝕋_{r,1}^{[d/2]}`
    pub fn spin(&self, doubled: i64) -> Result<Frac> {
        let cached = self.spin.lock().expect("spin cache").clone();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = t_br(self.f, self.f.r() as i64, 1)?;
                *self.spin.lock().expect("spin cache") = Some(v.clone());
                v
            }
        };
        Ok(v.shift(HalfInt::from_doubled(doubled), self.f.base()))
    }
}

/// The determinant form of `𝕋_{a,s}`; for `a = r` the index `s` is the full spin label.
pub fn cbr_br(f: &BrFamily, a: i64, s: i64, variant: CbrVariant) -> Result<Frac> {
    cbr_br_with(&Columns::new(f), a, s, variant)
}

pub fn cbr_br_with(c: &Columns, a: i64, s: i64, variant: CbrVariant) -> Result<Frac> {
    let f = c.f;
    let r = f.r() as i64;
    let o = f.order();
    if a < 0 || a > r || s < 0 {
        return Err(Error::BadIndexSet(format!("(a, s) = ({a}, {s}) outside 0 ≤ a ≤ {r}, s ≥ 0")));
    }
    if !variant.applies(r, a, s) {
        return Err(Error::WrongVariant(format!("{} needs a = r and an odd spin label", variant.name())));
    }
    let odd = a == r && s % 2 == 1;
    if !odd {
        let (height, n) = if a < r { (a, s) } else { (r, s / 2) };
        let mut rows = Vec::new();
        for i in 1..=n {
            let mut row = Vec::new();
            for j in 1..=n {
                let sh = match variant {
                    CbrVariant::DecSpinLast => n - i - j + 1,
                    _ => -n + i + j - 1,
                };
                row.push(c.column(height - i + j, 2 * sh)?);
            }
            rows.push(row);
        }
        return Ok(det(o, &rows));
    }
    let n = s / 2;
    let mut rows = Vec::new();
    for i in 1..=n + 1 {
        let mut row = Vec::new();
        match variant {
            CbrVariant::DecSpinLast => {
                for j in 1..=n {
                    row.push(c.column(r - i + j, 2 * (n - i - j) + 3)?);
                }
                row.push(c.spin(2 * (n - 2 * i + 2))?);
            }
            CbrVariant::IncSpinFirst => {
                row.push(c.spin(2 * (-n + 2 * i - 2))?);
                for j in 2..=n + 1 {
                    row.push(c.column(r + i - j, 2 * (-n + i + j) - 5)?);
                }
            }
            CbrVariant::IncSpinLast => {
                for j in 1..=n {
                    row.push(c.column(r - i + j, 2 * (-n + i + j) - 3)?);
                }
                row.push(c.spin(2 * (-n + 2 * i - 2))?);
            }
            CbrVariant::DecSpinFirst => {
                row.push(c.spin(2 * (n - 2 * i + 2))?);
                for j in 2..=n + 1 {
                    row.push(c.column(r + i - j, 2 * (n - i - j) + 5)?);
                }
            }
        }
        rows.push(row);
    }
    Ok(det(o, &rows))
}

/// Every applicable determinant layout against the Wronskian `𝕋_{a,s}`, for `a < r`
/// with `s ≤ smax` and `a = r` with spin label up to `2 smax + 1`.
pub fn check_cbr(f: &BrFamily, smax: i64) -> Vec<Report> {
    let r = f.r() as i64;
    let o = f.order();
    let table = TTable::new(f);
    let cols = Columns::new(f);
    let mut jobs: Vec<(i64, i64, CbrVariant)> = Vec::new();
    for a in 0..=r {
        let top = if a < r { smax } else { 2 * smax + 1 };
        for s in 0..=top {
            jobs.extend(CbrVariant::ALL.iter().filter(|v| v.applies(r, a, s)).map(|&v| (a, s, v)));
        }
    }
    crate::exec::map(&jobs, |&(a, s, v)| {
        let params = Params::new().with("r", r).with("a", a).with("s", s).with("variant", v.name());
        Report::from_residual("br/cbr", params, Tag::Proven, o, || {
            Ok(cbr_br_with(&cols, a, s, v)?.residual(&table.get(a, s)?))
        })
    })
}
