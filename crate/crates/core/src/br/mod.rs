//! The `B_r = so(2r+1)` reduction of a `gl(2r|1)` family.
//!
//! Indices `1..=2r` are bosonic with partners `a* = 2r + 1 − a`, and `2r+1`
//! is the single fermionic index. Twist parameters are `z_b = w_b²`,
//! `z_{b*} = w_b^{-2}` for `b ≤ r` and `z_{2r+1} = −1`.

mod cbr;
mod nonrect;
mod qq;
mod seed;
mod spinor;
mod tfun;

pub use cbr::*;
pub use nonrect::*;
pub use qq::*;
pub use seed::*;
pub use spinor::*;
pub use tfun::*;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactring::{format_rat, parse_rat, rat, Frac, HalfInt, Rat, Series, ShiftBase};
use crate::qfamily::{FamilyFile, Grading, QFamily, Subset, ZParams};
use crate::report::{Params, Report, Tag};

pub fn br_grading(r: usize) -> Grading {
    Grading::new(2 * r, 1)
}

/// The partner `a* = 2r − a + 1` of a bosonic index.
pub fn star(r: usize, a: usize) -> usize {
    2 * r + 1 - a
}

pub fn star_set(r: usize, set: Subset) -> Subset {
    set.iter().map(|a| star(r, a)).collect()
}

/// `z_b = w_b²`, `z_{b*} = w_b^{-2}` and `z_{2r+1} = −1`, with roots `w_b` and `w_b^{-1}`.
pub fn br_z(r: usize, w: &[Rat]) -> Result<ZParams> {
    if r < 1 || w.len() != r {
        return Err(Error::DegenerateParameters(format!("need {r} roots, got {}", w.len())));
    }
    let mut z = Vec::with_capacity(2 * r + 1);
    let mut roots = Vec::with_capacity(2 * r + 1);
    for x in w {
        if x.is_zero() || x * x == Rat::one() {
            return Err(Error::DegenerateParameters(format!("w = {x} gives z in {{0, 1}}")));
        }
        z.push(x * x);
        roots.push(Some(x.clone()));
    }
    for b in (1..=r).rev() {
        let inv = w[b - 1].recip();
        z.push(&inv * &inv);
        roots.push(Some(inv));
    }
    z.push(-Rat::one());
    roots.push(None);
    ZParams::with_roots(z, roots)
}

/// Positive generic roots `w_b = n/d` with `n ∈ [2, 9]`, `d ∈ {1, 2, 3}`.
pub fn random_w<R: Rng>(rng: &mut R, r: usize, base: &ShiftBase, order: usize) -> Vec<Rat> {
    loop {
        let w: Vec<Rat> = (0..r).map(|_| rat(rng.random_range(2..=9), rng.random_range(1..=3))).collect();
        if let Ok(z) = br_z(r, &w) {
            if z.check_generic(base, order).is_ok() {
                return w;
            }
        }
    }
}

/// A `gl(2r|1)` family together with the folding data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrFamily {
    r: usize,
    w: Vec<Rat>,
    fam: QFamily,
}

impl BrFamily {
    /// Wraps a family whose grading and twist parameters match `(r, w)`.
    pub fn new(r: usize, w: Vec<Rat>, fam: QFamily) -> Result<Self> {
        if r < 2 {
            return Err(Error::DegenerateParameters(format!("rank r = {r} must be at least 2")));
        }
        let z = br_z(r, &w)?;
        if *fam.grading() != br_grading(r) {
            return Err(Error::BadIndexSet(format!("family grading is not (2r|1) for r = {r}")));
        }
        if fam.z() != &z {
            return Err(Error::DegenerateParameters("twist parameters do not satisfy the folding constraints".into()));
        }
        Ok(BrFamily { r, w, fam })
    }

    /// Every `Q_I = 1`.
    pub fn ones(r: usize, w: Vec<Rat>, base: ShiftBase, order: usize) -> Result<Self> {
        let z = br_z(r, &w)?;
        BrFamily::new(r, w, QFamily::ones(br_grading(r), z, base, order))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn w(&self) -> &[Rat] {
        &self.w
    }

    pub fn family(&self) -> &QFamily {
        &self.fam
    }

    pub fn order(&self) -> usize {
        self.fam.order()
    }

    pub fn base(&self) -> &ShiftBase {
        self.fam.base()
    }

    pub fn bosonic(&self) -> Subset {
        Subset::range(1, 2 * self.r)
    }

    pub fn fermionic(&self) -> Subset {
        Subset::single(2 * self.r + 1)
    }

    pub fn full(&self) -> Subset {
        Subset::range(1, 2 * self.r + 1)
    }

    pub fn z(&self, a: usize) -> &Rat {
        self.fam.zv(a)
    }

    /// `z_b^{1/2}`: `w_b` for `b ≤ r`, `w_{b*}^{-1}` otherwise.
    pub fn sqrt_z(&self, b: usize) -> Rat {
        if b <= self.r {
            self.w[b - 1].clone()
        } else {
            self.w[star(self.r, b) - 1].recip()
        }
    }

    /// `Π_{j=1}^{r} (z_j^{1/2} + z_j^{-1/2})`
    pub fn spin_factor(&self) -> Rat {
        self.w.iter().fold(Rat::one(), |acc, x| acc * (x + x.recip()))
    }

    /// `Q_I^{[d/2]}` as a fraction.
    pub fn qh(&self, set: Subset, doubled: i64) -> Frac {
        Frac::from_series(self.fam.qs(set, HalfInt::from_doubled(doubled)))
    }

    /// `Q_I^{[a]}` as a fraction.
    pub fn qi(&self, set: Subset, a: i64) -> Frac {
        self.qh(set, 2 * a)
    }

    /// `Q_B − Q_{𝔅∖B*,𝔉}`
    pub fn folding_residual(&self, set: Subset) -> Result<Series> {
        if !set.is_subset_of(self.bosonic()) {
            return Err(Error::BadIndexSet(format!("{set} is not bosonic")));
        }
        let partner = self.bosonic().minus(star_set(self.r, set)).union(self.fermionic());
        Ok(self.fam.q(set).sub_ref(self.fam.q(partner)))
    }

    /// One report per bosonic `B` with `|B| ≤ max_size`.
    pub fn check_folding(&self, max_size: usize) -> Vec<Report> {
        let sets: Vec<Subset> = self.bosonic().subsets().filter(|s| s.len() <= max_size).collect();
        crate::exec::map(&sets, |&set| {
            Report::from_residual("br/folding", Params::new().with("B", set), Tag::Proven, self.order(), || {
                self.folding_residual(set)
            })
        })
    }

    /// The same data with `c u^k` added to `Q_I`.
    pub fn perturbed(&self, set: Subset, k: usize, c: &Rat) -> BrFamily {
        BrFamily { r: self.r, w: self.w.clone(), fam: self.fam.perturbed(set, k, c) }
    }

    pub fn truncated(&self, order: usize) -> BrFamily {
        BrFamily { r: self.r, w: self.w.clone(), fam: self.fam.truncated(order) }
    }

    pub fn to_file(&self) -> FamilyFile {
        let mut file = self.fam.to_file();
        file.r = Some(self.r);
        file.w = Some(self.w.iter().map(format_rat).collect());
        file
    }

    pub fn from_file(file: &FamilyFile) -> Result<BrFamily> {
        let fam = QFamily::from_file(file)?;
        let r = file.r.ok_or_else(|| Error::Parse("family file has no rank r".into()))?;
        let w = match &file.w {
            Some(w) => w.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?,
            None => (1..=r).map(|b| fam.z().sqrt(b).cloned()).collect::<Result<Vec<_>>>()?,
        };
        BrFamily::new(r, w, fam)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<BrFamily> {
        let file: FamilyFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        BrFamily::from_file(&file)
    }
}
