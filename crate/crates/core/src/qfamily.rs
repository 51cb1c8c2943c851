//! Q-function families for gl(M|N).

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{format_rat, parse_rat, rat, HalfInt, Rat, Series, ShiftBase};
use crate::report::{Params, Report, Tag};

/// A subset of `{1, …, M+N}` as a bitmask; element `a` is bit `a-1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{lo, lo+1, …, hi}`; empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn single(a: usize) -> Self {
        Subset(1 << (a - 1))
    }

    pub fn contains(self, a: usize) -> bool {
        a >= 1 && self.0 & (1 << (a - 1)) != 0
    }

    pub fn with(self, a: usize) -> Self {
        Subset(self.0 | (1 << (a - 1)))
    }

    pub fn without(self, a: usize) -> Self {
        Subset(self.0 & !(1 << (a - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersect(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=32).filter(move |a| bits & (1u32 << (a - 1)) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some(((s | !full).wrapping_add(1)) & full) };
            Some(Subset(s))
        })
    }

    /// All subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = Subset> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(Subset::EMPTY, Subset::with)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if s.is_empty() {
            return Ok(Subset::EMPTY);
        }
        s.split(',')
            .map(|a| match a.trim().parse::<usize>() {
                Ok(a) if (1..=32).contains(&a) => Ok(a),
                _ => Err(Error::Parse(format!("bad subset element {a:?}"))),
            })
            .collect()
    }
}

/// The grading of `{1, …, M+N}`: the first `M` indices are bosonic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub bosons: usize,
    pub fermions: usize,
}

impl Grading {
    pub fn new(bosons: usize, fermions: usize) -> Self {
        assert!(bosons + fermions <= 24, "index set too large");
        Grading { bosons, fermions }
    }

    pub fn size(&self) -> usize {
        self.bosons + self.fermions
    }

    pub fn is_bosonic(&self, a: usize) -> bool {
        (1..=self.bosons).contains(&a)
    }

    pub fn parity(&self, a: usize) -> i64 {
        if self.is_bosonic(a) {
            1
        } else {
            -1
        }
    }

    pub fn all(&self) -> Subset {
        Subset::range(1, self.size())
    }

    pub fn bosonic(&self) -> Subset {
        Subset::range(1, self.bosons)
    }

    pub fn fermionic(&self) -> Subset {
        Subset::range(self.bosons + 1, self.size())
    }

    /// `(|I ∩ 𝔅|, |I ∩ 𝔉|)`
    pub fn counts(&self, i: Subset) -> (usize, usize) {
        (i.intersect(self.bosonic()).len(), i.intersect(self.fermionic()).len())
    }

    /// `Σ_{a∈I} p_a`
    pub fn parity_sum(&self, i: Subset) -> i64 {
        let (m, n) = self.counts(i);
        m as i64 - n as i64
    }

    /// The index-set involution `σ`.
    pub fn sigma_subset(&self, i: Subset) -> Subset {
        let (mm, nn) = (self.bosons, self.fermions);
        let image: Subset = i
            .iter()
            .map(|a| if self.is_bosonic(a) { mm + 1 - a } else { 2 * mm + nn + 1 - a })
            .collect();
        self.all().minus(image)
    }

    /// The index `a ↦ σ`-partner used for the twist parameters.
    pub fn sigma_index(&self, a: usize) -> usize {
        if self.is_bosonic(a) {
            self.bosons + 1 - a
        } else {
            2 * self.bosons + self.fermions + 1 - a
        }
    }
}

/// Twist parameters `z_a`, optionally with chosen square roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZParams {
    z: Vec<Rat>,
    sqrt: Vec<Option<Rat>>,
}

impl ZParams {
    pub fn from_z(z: Vec<Rat>) -> Self {
        let n = z.len();
        ZParams { z, sqrt: vec![None; n] }
    }

    /// Square roots `w` for the first indices, then plain `z` values.
    pub fn from_roots(w: Vec<Rat>, rest: Vec<Rat>) -> Self {
        let mut z: Vec<Rat> = w.iter().map(|x| x * x).collect();
        let mut sqrt: Vec<Option<Rat>> = w.into_iter().map(Some).collect();
        sqrt.extend(rest.iter().map(|_| None));
        z.extend(rest);
        ZParams { z, sqrt }
    }

    /// Explicit values and roots; every given root must square to its value.
    pub fn with_roots(z: Vec<Rat>, sqrt: Vec<Option<Rat>>) -> Result<Self> {
        if z.len() != sqrt.len() {
            return Err(Error::DegenerateParameters("root list length differs from z".into()));
        }
        for (a, (x, w)) in z.iter().zip(&sqrt).enumerate() {
            if let Some(w) = w {
                if &(w * w) != x {
                    return Err(Error::DegenerateParameters(format!("root of z_{} does not square to it", a + 1)));
                }
            }
        }
        Ok(ZParams { z, sqrt })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn z(&self, a: usize) -> &Rat {
        &self.z[a - 1]
    }

    pub fn values(&self) -> &[Rat] {
        &self.z
    }

    pub fn sqrt(&self, a: usize) -> Result<&Rat> {
        self.sqrt[a - 1]
            .as_ref()
            .ok_or_else(|| Error::DegenerateParameters(format!("no square root chosen for z_{a}")))
    }

    pub fn roots(&self) -> &[Option<Rat>] {
        &self.sqrt
    }

    /// `σ(z)`; square roots are carried along as inverses.
    pub fn sigma(&self, g: &Grading) -> ZParams {
        let idx = |i: usize| g.sigma_index(i + 1) - 1;
        ZParams {
            z: (0..self.len()).map(|i| self.z[idx(i)].recip()).collect(),
            sqrt: (0..self.len()).map(|i| self.sqrt[idx(i)].as_ref().map(Rat::recip)).collect(),
        }
    }

    /// Nonzero, pairwise distinct, and `z_i q^k ≠ z_j q^{-k}` for `k < order`.
    pub fn check_generic(&self, base: &ShiftBase, order: usize) -> Result<()> {
        let q = base.q();
        for (i, zi) in self.z.iter().enumerate() {
            if zi.is_zero() {
                return Err(Error::DegenerateParameters(format!("z_{} = 0", i + 1)));
            }
            for (j, zj) in self.z.iter().enumerate().skip(i + 1) {
                let ratio = zi / zj;
                let mut qk = Rat::one();
                for k in 0..order.max(1) {
                    if ratio == qk || ratio == qk.recip() {
                        return Err(Error::DegenerateParameters(format!(
                            "z_{} / z_{} = q^(±{})",
                            i + 1,
                            j + 1,
                            2 * k
                        )));
                    }
                    qk = &qk * &q * &q;
                }
            }
        }
        Ok(())
    }
}

/// A family of Q-functions `Q_I`, one per subset of the index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFamily {
    grading: Grading,
    z: ZParams,
    base: ShiftBase,
    order: usize,
    q: Vec<Series>,
}

impl QFamily {
    /// The family `Q_I ≡ 1`.
    pub fn ones(grading: Grading, z: ZParams, base: ShiftBase, order: usize) -> Self {
        assert_eq!(z.len(), grading.size());
        let q = vec![Series::one(order); 1 << grading.size()];
        QFamily { grading, z, base, order, q }
    }

    /// A family from an explicit table, indexed by subset bitmask.
    pub fn from_table(grading: Grading, z: ZParams, base: ShiftBase, q: Vec<Series>) -> Result<Self> {
        if q.len() != 1 << grading.size() || z.len() != grading.size() {
            return Err(Error::BadIndexSet("table size does not match the grading".into()));
        }
        let order = q.iter().map(Series::order).min().unwrap_or(0);
        Ok(QFamily { grading, z, base, order, q })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn z(&self) -> &ZParams {
        &self.z
    }

    pub fn zv(&self, a: usize) -> &Rat {
        self.z.z(a)
    }

    pub fn base(&self) -> &ShiftBase {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn q(&self, i: Subset) -> &Series {
        &self.q[i.bits() as usize]
    }

    /// `Q_I^{[a]}`
    pub fn qs(&self, i: Subset, a: impl Into<HalfInt>) -> Series {
        self.q(i).shift(a.into(), &self.base)
    }

    pub fn table(&self) -> &[Series] {
        &self.q
    }

    pub fn set(&mut self, i: Subset, s: Series) {
        self.q[i.bits() as usize] = s.truncate(self.order);
    }

    /// A copy with `c u^k` added to `Q_I`.
    pub fn perturbed(&self, i: Subset, k: usize, c: &Rat) -> QFamily {
        let mut out = self.clone();
        let bumped = self.q(i).add_ref(&Series::monomial(c.clone(), k, self.order));
        out.set(i, bumped);
        out
    }

    /// A copy at a lower truncation order.
    pub fn truncated(&self, order: usize) -> QFamily {
        QFamily {
            grading: self.grading,
            z: self.z.clone(),
            base: self.base.clone(),
            order: order.min(self.order),
            q: self.q.iter().map(|s| s.truncate(order)).collect(),
        }
    }

    fn check_pair(&self, i: Subset, a: usize, b: usize) -> Result<()> {
        let n = self.grading.size();
        if a == b || !(1..=n).contains(&a) || !(1..=n).contains(&b) || i.contains(a) || i.contains(b) {
            return Err(Error::BadIndexSet(format!("({a}, {b}) with I = {i}")));
        }
        if !i.is_subset_of(self.grading.all()) {
            return Err(Error::BadIndexSet(format!("{i} is not inside the index set")));
        }
        Ok(())
    }

    /// LHS − RHS of the bosonic QQ-relation for `p_i = p_j`.
    pub fn qq_bosonic_residual(&self, set: Subset, i: usize, j: usize) -> Result<Series> {
        self.check_pair(set, i, j)?;
        let g = &self.grading;
        if g.parity(i) != g.parity(j) {
            return Err(Error::WrongRelation { i, j, expected: "fermionic" });
        }
        let p = g.parity(i);
        let (zi, zj) = (self.zv(i), self.zv(j));
        let (si, sj) = (set.with(i), set.with(j));
        let lhs = self.q(set).mul_ref(self.q(set.with(i).with(j))).scale(&(zi - zj));
        let r1 = self.qs(si, p).mul_ref(&self.qs(sj, -p)).scale(zi);
        let r2 = self.qs(si, -p).mul_ref(&self.qs(sj, p)).scale(zj);
        Ok(lhs.sub_ref(&r1).add_ref(&r2))
    }

    /// LHS − RHS of the fermionic QQ-relation for `p_i = −p_j`.
    pub fn qq_fermionic_residual(&self, set: Subset, i: usize, j: usize) -> Result<Series> {
        self.check_pair(set, i, j)?;
        let g = &self.grading;
        if g.parity(i) == g.parity(j) {
            return Err(Error::WrongRelation { i, j, expected: "bosonic" });
        }
        let p = g.parity(i);
        let (zi, zj) = (self.zv(i), self.zv(j));
        let sij = set.with(i).with(j);
        let lhs = self.q(set.with(i)).mul_ref(self.q(set.with(j))).scale(&(zi - zj));
        let r1 = self.qs(set, -p).mul_ref(&self.qs(sij, p)).scale(zi);
        let r2 = self.qs(set, p).mul_ref(&self.qs(sij, -p)).scale(zj);
        Ok(lhs.sub_ref(&r1).add_ref(&r2))
    }

    /// Whichever QQ-relation applies to the parities of `(i, j)`.
    pub fn qq_residual(&self, set: Subset, i: usize, j: usize) -> Result<Series> {
        if self.grading.parity(i) == self.grading.parity(j) {
            self.qq_bosonic_residual(set, i, j)
        } else {
            self.qq_fermionic_residual(set, i, j)
        }
    }

    /// Every admissible `(I, i, j)` with `i < j`.
    pub fn qq_instances(&self) -> Vec<(Subset, usize, usize)> {
        let all = self.grading.all();
        let mut out = Vec::new();
        for set in all.subsets() {
            let rest = all.minus(set).to_vec();
            for (x, &i) in rest.iter().enumerate() {
                for &j in &rest[x + 1..] {
                    out.push((set, i, j));
                }
            }
        }
        out
    }

    /// One report per QQ-relation instance.
    pub fn check_qq(&self) -> Vec<Report> {
        crate::exec::map(&self.qq_instances(), |&(set, i, j)| self.qq_report(set, i, j))
    }

    pub fn qq_report(&self, set: Subset, i: usize, j: usize) -> Report {
        let name = if self.grading.parity(i) == self.grading.parity(j) {
            "qq/bosonic"
        } else {
            "qq/fermionic"
        };
        let params = Params::new().with("I", set).with("i", i).with("j", j);
        Report::from_residual(name, params, Tag::Proven, self.order, || self.qq_residual(set, i, j))
    }

    /// The family `Q'_I = Q_{σ(I)}` with twist parameters `σ(z)`.
    pub fn sigma(&self) -> QFamily {
        let g = self.grading;
        let q = (0..self.q.len() as u32)
            .map(|bits| self.q(g.sigma_subset(Subset::from_bits(bits))).clone())
            .collect();
        QFamily {
            grading: g,
            z: self.z.sigma(&g),
            base: self.base.clone(),
            order: self.order,
            q,
        }
    }

    /// Checks the QQ-relations on the σ-image of the family.
    pub fn check_sigma_invariance(&self) -> Report {
        let image = self.sigma();
        let params = Params::new()
            .with("M", self.grading.bosons)
            .with("N", self.grading.fermions);
        Report::from_residual("qq/sigma", params, Tag::Proven, self.order, || {
            for (set, i, j) in image.qq_instances() {
                let r = image.qq_residual(set, i, j)?;
                if !r.is_zero() {
                    return Ok(r);
                }
            }
            Ok(Series::zero(self.order))
        })
    }

    pub fn to_file(&self) -> FamilyFile {
        let mut q = IndexMap::new();
        for (bits, s) in self.q.iter().enumerate() {
            q.insert(
                Subset::from_bits(bits as u32).to_string(),
                s.coeffs().iter().map(format_rat).collect(),
            );
        }
        FamilyFile {
            schema: FAMILY_SCHEMA.to_string(),
            bosons: self.grading.bosons,
            fermions: self.grading.fermions,
            t: format_rat(self.base.t()),
            order: self.order,
            z: self.z.values().iter().map(format_rat).collect(),
            sqrt_z: self.z.roots().iter().map(|w| w.as_ref().map(format_rat)).collect(),
            r: None,
            w: None,
            q,
        }
    }

    pub fn from_file(file: &FamilyFile) -> Result<QFamily> {
        if file.schema != FAMILY_SCHEMA {
            return Err(Error::Parse(format!("unknown family schema {:?}", file.schema)));
        }
        let grading = Grading::new(file.bosons, file.fermions);
        let z: Vec<Rat> = file.z.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
        let sqrt: Vec<Option<Rat>> = if file.sqrt_z.is_empty() {
            vec![None; z.len()]
        } else {
            file.sqrt_z
                .iter()
                .map(|w| w.as_deref().map(parse_rat).transpose())
                .collect::<Result<_>>()?
        };
        if sqrt.len() != z.len() {
            return Err(Error::Parse("sqrt_z and z differ in length".into()));
        }
        let base = ShiftBase::new(parse_rat(&file.t)?)?;
        let mut q = vec![None; 1 << grading.size()];
        for (key, coeffs) in &file.q {
            let set: Subset = key.parse()?;
            if !set.is_subset_of(grading.all()) {
                return Err(Error::Parse(format!("subset {key} outside the index set")));
            }
            let cs = coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>()?;
            q[set.bits() as usize] = Some(Series::from_coeffs(cs, file.order));
        }
        let q = q
            .into_iter()
            .enumerate()
            .map(|(bits, s)| s.ok_or_else(|| Error::Parse(format!("missing Q for {}", Subset::from_bits(bits as u32)))))
            .collect::<Result<Vec<_>>>()?;
        QFamily::from_table(grading, ZParams { z, sqrt }, base, q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<QFamily> {
        let file: FamilyFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        QFamily::from_file(&file)
    }
}

pub const FAMILY_SCHEMA: &str = "tq-family/1";

/// On-disk form of a family; all numbers are exact fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub schema: String,
    #[serde(rename = "M")]
    pub bosons: usize,
    #[serde(rename = "N")]
    pub fermions: usize,
    pub t: String,
    pub order: usize,
    pub z: Vec<String>,
    #[serde(default)]
    pub sqrt_z: Vec<Option<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
    pub q: IndexMap<String, Vec<String>>,
}

/// Solves the fermionic relation at `I = ∅` for `Q_{b,f}` order by order.
///
/// The order-`k` coefficient enters the residual with the factor
/// `z_b q^k − z_f q^{-k}`.
pub fn solve_pair_q(
    q_empty: &Series,
    q_b: &Series,
    q_f: &Series,
    z_b: &Rat,
    z_f: &Rat,
    base: &ShiftBase,
) -> Result<Series> {
    let order = q_empty.order().min(q_b.order()).min(q_f.order());
    let one = HalfInt::int(1);
    let lhs = q_b.mul_ref(q_f).scale(&(z_b - z_f));
    let left = q_empty.shift(-one, base).scale(z_b);
    let right = q_empty.shift(one, base).scale(z_f);
    let residual = |x: &Series| {
        left.mul_ref(&x.shift(one, base))
            .sub_ref(&right.mul_ref(&x.shift(-one, base)))
            .sub_ref(&lhs)
    };
    let mut coeffs = vec![Rat::zero(); order];
    if order > 0 {
        coeffs[0] = Rat::one();
    }
    let q = base.q();
    for k in 1..order {
        let current = Series::from_coeffs(coeffs.clone(), order);
        let rk = residual(&current).coeff(k);
        let qk = crate::exactring::rat_pow(&q, k as i64);
        let factor = z_b * &qk - z_f / &qk;
        if factor.is_zero() {
            return Err(Error::DegenerateParameters(format!("z_b q^{k} = z_f q^-{k}")));
        }
        coeffs[k] = -rk / factor;
    }
    Ok(Series::from_coeffs(coeffs, order))
}

/// Builds all `Q_{B,F}` from `Q_∅`, `Q_b`, `Q_f` and `Q_{b,f}` through the
/// Wronskian-type determinant.
pub fn build_family_from_basics(
    grading: Grading,
    z: ZParams,
    base: ShiftBase,
    q_empty: &Series,
    q_b: &[Series],
    q_f: &[Series],
    q_bf: &[Vec<Series>],
) -> Result<QFamily> {
    let order = q_empty.order();
    if q_b.len() != grading.bosons || q_f.len() != grading.fermions || q_bf.len() != grading.bosons {
        return Err(Error::BadIndexSet("basic function count does not match the grading".into()));
    }
    z.check_generic(&base, order)?;
    let mut fam = QFamily::ones(grading, z, base, order);
    fam.set(Subset::EMPTY, q_empty.clone());
    for (b, s) in (1..).zip(q_b) {
        fam.set(Subset::single(b), s.clone());
    }
    for (f, s) in (grading.bosons + 1..).zip(q_f) {
        fam.set(Subset::single(f), s.clone());
    }
    for (b, row) in (1..).zip(q_bf) {
        for (f, s) in (grading.bosons + 1..).zip(row) {
            fam.set(Subset::single(b).with(f), s.clone());
        }
    }
    let targets: Vec<Subset> = grading
        .all()
        .subsets()
        .filter(|s| {
            let (m, n) = grading.counts(*s);
            !(m + n <= 1 || (m == 1 && n == 1))
        })
        .collect();
    let built = crate::exec::try_map(&targets, |&set| {
        let (m, n) = grading.counts(set);
        let bos = set.intersect(grading.bosonic());
        let fer = set.intersect(grading.fermionic());
        let t = crate::wronskian::t_empty(&fam, bos, fer)?;
        let shift = m as i64 - n as i64;
        Ok(t.to_series()?.mul_ref(&fam.qs(Subset::EMPTY, shift).inv()?))
    })?;
    for (set, s) in targets.into_iter().zip(built) {
        fam.set(set, s);
    }
    Ok(fam)
}

/// A random series with constant term 1 and coefficients `n/d`,
/// `n ∈ [−9, 9]`, `d ∈ {1, 2, 3}`, up to `degree`.
pub fn random_unit_series<R: Rng>(rng: &mut R, degree: usize, order: usize) -> Series {
    let mut cs = vec![Rat::one()];
    for _ in 0..degree {
        cs.push(random_small_rat(rng));
    }
    Series::from_coeffs(cs, order)
}

pub fn random_small_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.random_range(-9..=9), rng.random_range(1..=3))
}

/// Generic twist parameters; bosonic ones come with square roots.
pub fn random_z<R: Rng>(rng: &mut R, grading: &Grading, base: &ShiftBase, order: usize) -> ZParams {
    loop {
        let w: Vec<Rat> = (0..grading.bosons)
            .map(|_| {
                let n: i64 = rng.random_range(2..=9);
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                rat(sign * n, rng.random_range(1..=3))
            })
            .collect();
        let rest: Vec<Rat> = (0..grading.fermions)
            .map(|_| loop {
                let x = random_small_rat(rng);
                if !x.is_zero() {
                    break x;
                }
            })
            .collect();
        let z = ZParams::from_roots(w, rest);
        if z.check_generic(base, order).is_ok() {
            return z;
        }
    }
}

/// A determinant-built family from random basics of the given degree.
pub fn random_family<R: Rng>(
    rng: &mut R,
    grading: Grading,
    base: ShiftBase,
    order: usize,
    degree: usize,
) -> Result<QFamily> {
    let z = random_z(rng, &grading, &base, order);
    let q_empty = random_unit_series(rng, degree, order);
    let q_b: Vec<Series> = (0..grading.bosons).map(|_| random_unit_series(rng, degree, order)).collect();
    let q_f: Vec<Series> = (0..grading.fermions).map(|_| random_unit_series(rng, degree, order)).collect();
    let q_bf = (1..=grading.bosons)
        .map(|b| {
            (1..=grading.fermions)
                .map(|f| {
                    let f_idx = grading.bosons + f;
                    solve_pair_q(&q_empty, &q_b[b - 1], &q_f[f - 1], z.z(b), z.z(f_idx), &base)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    build_family_from_basics(grading, z, base, &q_empty, &q_b, &q_f, &q_bf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat_int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zp(v: &[(i64, i64)]) -> ZParams {
        ZParams::from_z(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn subset_basics() {
        let s: Subset = "{1,3}".parse().unwrap();
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(Subset::range(2, 1), Subset::EMPTY);
        assert_eq!(Subset::range(1, 3).subsets().count(), 8);
        assert_eq!(Subset::range(1, 4).subsets_of_size(2).count(), 6);
        assert!("{0}".parse::<Subset>().is_err());
    }

    #[test]
    fn sigma_on_subsets() {
        let g = Grading::new(4, 1);
        assert_eq!(g.sigma_subset(Subset::EMPTY), g.all());
        assert_eq!(g.sigma_subset(g.all()), Subset::EMPTY);
        assert_eq!(g.sigma_subset(Subset::single(1)), "{1,2,3,5}".parse().unwrap());
        for mm in 0..=3 {
            for nn in 0..=3 {
                let g = Grading::new(mm, nn);
                for s in g.all().subsets() {
                    assert_eq!(g.sigma_subset(g.sigma_subset(s)), s);
                }
            }
        }
    }

    #[test]
    fn sigma_on_z() {
        let g = Grading::new(2, 1);
        let z = zp(&[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(z.sigma(&g).values(), &[rat(1, 3), rat(1, 2), rat(1, 5)]);
        assert_eq!(z.sigma(&g).sigma(&g), z);
        let ones = zp(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(ones.sigma(&g), ones);
    }

    #[test]
    fn all_ones_family_satisfies_relations() {
        let g = Grading::new(2, 2);
        let fam = QFamily::ones(g, zp(&[(2, 1), (3, 1), (5, 1), (-7, 2)]), ShiftBase::default(), 4);
        for (set, i, j) in fam.qq_instances() {
            assert!(fam.qq_residual(set, i, j).unwrap().is_zero());
        }
        assert!(fam.check_sigma_invariance().passed());
        assert!(matches!(
            fam.qq_bosonic_residual(Subset::EMPTY, 1, 3),
            Err(Error::WrongRelation { .. })
        ));
        assert!(matches!(
            fam.qq_fermionic_residual(Subset::EMPTY, 1, 2),
            Err(Error::WrongRelation { .. })
        ));
    }

    #[test]
    fn perturbation_shows_up_at_first_order() {
        let g = Grading::new(2, 1);
        let z = zp(&[(2, 1), (3, 1), (5, 1)]);
        let base = ShiftBase::default();
        let fam = QFamily::ones(g, z, base, 4).perturbed(Subset::single(1), 1, &rat_int(1));
        // Q_1 = 1 + u: residual at I=∅, (1,2) is (z1−z2)Q_12 − z1 Q_1^{[1]} + z2 Q_1^{[−1]}
        // whose u-coefficient is −z1 q + z2 / q = −8 + 3/4.
        let r = fam.qq_bosonic_residual(Subset::EMPTY, 1, 2).unwrap();
        assert_eq!(r.coeff(1), rat(-29, 4));
    }

    #[test]
    fn pair_solver() {
        let base = ShiftBase::default();
        let one = Series::one(5);
        let (zb, zf) = (rat_int(2), rat_int(5));
        assert_eq!(solve_pair_q(&one, &one, &one, &zb, &zf, &base).unwrap(), one);
        let qb = Series::from_coeffs(vec![rat_int(1), rat_int(1)], 5);
        let x = solve_pair_q(&one, &qb, &one, &zb, &zf, &base).unwrap();
        let q = base.q();
        assert_eq!(x.coeff(1), (&zb - &zf) / (&zb * &q - &zf / &q));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let qe = random_unit_series(&mut rng, 2, 6);
        let qb = random_unit_series(&mut rng, 2, 6);
        let qf = random_unit_series(&mut rng, 2, 6);
        let qbf = solve_pair_q(&qe, &qb, &qf, &zb, &zf, &base).unwrap();
        let mut fam = QFamily::ones(Grading::new(1, 1), ZParams::from_z(vec![zb, zf]), base, 6);
        fam.set(Subset::EMPTY, qe);
        fam.set(Subset::single(1), qb);
        fam.set(Subset::single(2), qf);
        fam.set(Subset::range(1, 2), qbf);
        assert!(fam.qq_fermionic_residual(Subset::EMPTY, 1, 2).unwrap().is_zero());
    }

    #[test]
    fn degenerate_pair_is_reported() {
        let base = ShiftBase::default();
        let one = Series::one(3);
        let qb = Series::from_coeffs(vec![rat_int(1), rat_int(1)], 3);
        // z_b q = z_f / q with q = 4
        let r = solve_pair_q(&one, &qb, &one, &rat_int(1), &rat_int(16), &base);
        assert!(matches!(r, Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn one_one_family_reproduces_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let fam = random_family(&mut rng, Grading::new(1, 1), ShiftBase::default(), 5, 2).unwrap();
        let qbf = solve_pair_q(
            fam.q(Subset::EMPTY),
            fam.q(Subset::single(1)),
            fam.q(Subset::single(2)),
            fam.zv(1),
            fam.zv(2),
            fam.base(),
        )
        .unwrap();
        assert_eq!(fam.q(Subset::range(1, 2)), &qbf);
    }

    #[test]
    fn all_ones_basics_build_constant_family() {
        let g = Grading::new(2, 1);
        let z = zp(&[(4, 1), (9, 4), (-3, 1)]);
        let base = ShiftBase::default();
        let one = Series::one(4);
        let fam = build_family_from_basics(
            g,
            z,
            base,
            &one,
            &[one.clone(), one.clone()],
            std::slice::from_ref(&one),
            &[vec![one.clone()], vec![one.clone()]],
        )
        .unwrap();
        for s in g.all().subsets() {
            assert_eq!(fam.q(s), &one, "Q_{s}");
        }
    }

    #[test]
    fn built_families_satisfy_qq_and_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (mm, nn) in [(2, 1), (1, 2), (2, 2)] {
            let fam = random_family(&mut rng, Grading::new(mm, nn), ShiftBase::default(), 5, 2).unwrap();
            for rep in fam.check_qq() {
                assert!(rep.passed(), "({mm}|{nn}) {rep}");
            }
            assert!(fam.check_sigma_invariance().passed());
            let broken = fam.perturbed(Subset::single(1), 1, &rat_int(1));
            assert!(!broken.check_sigma_invariance().passed());
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let fam = random_family(&mut rng, Grading::new(2, 1), ShiftBase::default(), 4, 2).unwrap();
        let back = QFamily::from_json(&fam.to_json()).unwrap();
        assert_eq!(back, fam);
        assert!(QFamily::from_json("{}").is_err());
    }
}
