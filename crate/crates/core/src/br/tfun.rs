//! Rectangular T-functions of the folded family, the T-system and the
//! identities used to derive it.

use num_traits::One;

use super::BrFamily;
use crate::error::{Error, Result};
use crate::exactring::{rat_pow, Frac, HalfInt, Rat, Series};
use crate::qfamily::Subset;
use crate::report::{Params, Report, Tag};
use crate::wronskian::{denom_d, epsilon, sign_rat, t_rect};

/// Which Q-function stands for `Q_{𝔅,𝔉}` in normalization factors.
/// Both are equal on a folded family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spelling {
    /// The full set `𝔅 ⊔ 𝔉`.
    Full,
    /// `Q_∅`.
    Empty,
}

fn top(f: &BrFamily, spelling: Spelling) -> Subset {
    match spelling {
        Spelling::Full => f.full(),
        Spelling::Empty => Subset::EMPTY,
    }
}

/// `Π num / Π den`, every factor a shifted Q-function given by doubled shift.
fn ratio(f: &BrFamily, num: &[(Subset, i64)], den: &[(Subset, i64)]) -> Result<Frac> {
    let mut n = Series::one(f.order());
    for &(set, d) in num {
        n = n.mul_ref(&f.family().qs(set, HalfInt::from_doubled(d)));
    }
    let mut m = Series::one(f.order());
    for &(set, d) in den {
        m = m.mul_ref(&f.family().qs(set, HalfInt::from_doubled(d)));
    }
    Frac::from_series(n).div_ref(&Frac::from_series(m))
}

fn check_range(f: &BrFamily, a: i64, s: i64) -> Result<()> {
    if a < 0 || a > f.r() as i64 || s < 0 {
        return Err(Error::BadIndexSet(format!("(a, s) = ({a}, {s}) outside 0 ≤ a ≤ {}, s ≥ 0", f.r())));
    }
    Ok(())
}

/// The normalization `Φ_{a,s}`; for `a = r` the index `s` is the full spin label.
pub fn phi(f: &BrFamily, a: i64, s: i64, spelling: Spelling) -> Result<Frac> {
    check_range(f, a, s)?;
    let r = f.r() as i64;
    let e = Subset::EMPTY;
    let t = top(f, spelling);
    let mut num = Vec::new();
    let den;
    if a < r {
        for j in 1..=s {
            num.push((e, 2 * (2 * r - s - a + 2 * j - 1)));
            num.push((t, 2 * (a + s - 2 * j)));
        }
        den = vec![(e, 2 * (2 * r + s - a - 1)), (t, 2 * (a - s))];
    } else if s % 2 == 0 {
        let k = s / 2;
        for j in 1..=k {
            num.push((e, 2 * (r - k + 2 * j - 1)));
            num.push((t, 2 * (r + k - 2 * j)));
        }
        den = vec![(e, 2 * (r + k - 1)), (t, 2 * (r - k))];
    } else {
        let k = s / 2;
        for j in 1..=k {
            num.push((e, 2 * (r + k - 2 * j) + 3));
            num.push((t, 2 * (r + k - 2 * j) + 1));
        }
        den = vec![(e, 2 * (r + k) - 1)];
    }
    ratio(f, &num, &den)
}

/// `𝕋_{a,s}` as `Φ` times a Wronskian T-function; for `a = r` the index `s` is the full spin label.
pub fn t_br(f: &BrFamily, a: i64, s: i64) -> Result<Frac> {
    t_br_spelled(f, a, s, Spelling::Full)
}

pub fn t_br_spelled(f: &BrFamily, a: i64, s: i64, spelling: Spelling) -> Result<Frac> {
    check_range(f, a, s)?;
    let r = f.r() as i64;
    let fam = f.family();
    let p = phi(f, a, s, spelling)?;
    if a < r {
        return Ok(p.mul_ref(&t_rect(fam, a, s, f.bosonic(), f.fermionic())?));
    }
    if s % 2 == 0 {
        return Ok(p.mul_ref(&t_rect(fam, r, s / 2, f.bosonic(), f.fermionic())?));
    }
    let t = t_rect(fam, r, s / 2, f.bosonic(), Subset::EMPTY)?.shift(HalfInt::half(-1), f.base());
    Ok(p.mul_ref(&t).scale(&f.spin_factor()))
}

/// `𝕋_{0,s} = Π_{j=1}^{s} Q_∅^{[2r−s+2j−1]} Q_∅^{[s−2j]}`
pub fn t_boundary(f: &BrFamily, s: i64) -> Frac {
    let r = f.r() as i64;
    let e = Subset::EMPTY;
    let mut acc = Frac::one(f.order());
    for j in 1..=s {
        acc = acc.mul_ref(&f.qi(e, 2 * r - s + 2 * j - 1)).mul_ref(&f.qi(e, s - 2 * j));
    }
    acc
}

/// `𝕋_{a,s}` as `Φ` times a sum over splittings `I ⊔ J = 𝔅`.
pub fn t_br_sum(f: &BrFamily, a: i64, s: i64) -> Result<Frac> {
    check_range(f, a, s)?;
    let r = f.r() as i64;
    let bos = f.bosonic();
    let fer = f.fermionic();
    let fam = f.family();
    let z = |x: usize| f.z(x).clone();
    let coeff = |i: Subset, j: Subset, exp: i64, plus_one: bool| {
        let mut c = Rat::one();
        for x in i.iter() {
            c *= rat_pow(&z(x), exp);
            if plus_one {
                c *= z(x) + Rat::one();
            }
            for y in j.iter() {
                c /= z(x) - z(y);
            }
        }
        c
    };
    let mut acc = Series::zero(f.order());
    let p = phi(f, a, s, Spelling::Full)?;
    if a < r || s % 2 == 0 {
        let (size, sh, exp) = if a < r { (a, s, s - a + 2 * r - 1) } else { (r, s / 2, s / 2 + r - 1) };
        for i in bos.subsets_of_size(size as usize) {
            let j = bos.minus(i);
            let term = fam.qs(i, sh + 2 * r - 1).mul_ref(&fam.qs(j.union(fer), -sh));
            acc = acc.add_ref(&term.scale(&coeff(i, j, exp, true)));
        }
        return Ok(p.mul_ref(&Frac::from_series(acc)));
    }
    let k = s / 2;
    for i in bos.subsets_of_size(r as usize) {
        let j = bos.minus(i);
        let term = fam
            .qs(i, HalfInt::from_doubled(2 * (k + 2 * r) - 1))
            .mul_ref(&fam.qs(j, HalfInt::from_doubled(-2 * k - 1)));
        acc = acc.add_ref(&term.scale(&coeff(i, j, k + r, false)));
    }
    Ok(p.mul_ref(&Frac::from_series(acc)).scale(&f.spin_factor()))
}

/// Memoized `𝕋_{a,s}` for repeated use in bilinear relations.
pub struct TTable<'a> {
    f: &'a BrFamily,
    cache: std::sync::Mutex<std::collections::HashMap<(i64, i64), Frac>>,
}

impl<'a> TTable<'a> {
    pub fn new(f: &'a BrFamily) -> Self {
        TTable { f, cache: Default::default() }
    }

    pub fn family(&self) -> &BrFamily {
        self.f
    }

    pub fn get(&self, a: i64, s: i64) -> Result<Frac> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&(a, s)) {
            return Ok(v.clone());
        }
        let v = t_br(self.f, a, s)?;
        self.cache.lock().expect("cache lock").insert((a, s), v.clone());
        Ok(v)
    }
}

/// LHS − RHS of the T-system relation at `(a, s)`; for `a = r`, `s` is the full spin label.
pub fn tsystem_residual(f: &BrFamily, a: i64, s: i64) -> Result<Series> {
    tsystem_residual_with(&TTable::new(f), a, s)
}

pub fn tsystem_residual_with(t: &TTable, a: i64, s: i64) -> Result<Series> {
    let f = t.family();
    let r = f.r() as i64;
    if a < 1 || a > r || s < 1 {
        return Err(Error::BadIndexSet(format!("T-system needs 1 ≤ a ≤ {r} and s ≥ 1, got ({a}, {s})")));
    }
    let base = f.base();
    let sh = |x: &Frac, d: i64| x.shift(HalfInt::from_doubled(d), base);
    let (lhs, rhs) = if a < r {
        let c = t.get(a, s)?;
        let lhs = sh(&c, -2).mul_ref(&sh(&c, 2));
        let first = t.get(a, s + 1)?.mul_ref(&t.get(a, s - 1)?);
        let second = if a == r - 1 {
            t.get(a - 1, s)?.mul_ref(&t.get(r, 2 * s)?)
        } else {
            t.get(a - 1, s)?.mul_ref(&t.get(a + 1, s)?)
        };
        (lhs, first.add_ref(&second))
    } else {
        let c = t.get(r, s)?;
        let lhs = sh(&c, -1).mul_ref(&sh(&c, 1));
        let first = t.get(r, s + 1)?.mul_ref(&t.get(r, s - 1)?);
        let second = if s % 2 == 0 {
            let m = t.get(r - 1, s / 2)?;
            sh(&m, -1).mul_ref(&sh(&m, 1))
        } else {
            let k = (s + 1) / 2;
            t.get(r - 1, k - 1)?.mul_ref(&t.get(r - 1, k)?)
        };
        (lhs, first.add_ref(&second))
    };
    Ok(lhs.residual(&rhs))
}

/// `𝖳_{a,1}` of the full `(2r|1)` family, zero for `a < 0`.
pub fn t_column(f: &BrFamily, a: i64) -> Result<Frac> {
    t_rect(f.family(), a, 1, f.bosonic(), f.fermionic())
}

/// `𝖳_{a,1} + 𝖳_{2r−a−1,1} − 𝕋_{r,1}^{[r−a−1/2]} 𝕋_{r,1}^{[−r+a+1/2]}`
pub fn t_plus_t_residual(f: &BrFamily, a: i64) -> Result<Series> {
    let r = f.r() as i64;
    let lhs = t_column(f, a)?.add_ref(&t_column(f, 2 * r - a - 1)?);
    let spin = t_br(f, r, 1)?;
    let d = 2 * (r - a) - 1;
    let rhs = spin.shift(HalfInt::from_doubled(d), f.base()).mul_ref(&spin.shift(HalfInt::from_doubled(-d), f.base()));
    Ok(lhs.residual(&rhs))
}

/// For `a ≥ 2r`: `𝖳_{a,1} − Π(z^{1/2} + z^{−1/2})² Q_𝔉^{[2r−a−1]} Q_𝔅^{[a]}`
pub fn hook_boundary_residual(f: &BrFamily, a: i64) -> Result<Series> {
    let r = f.r() as i64;
    if a < 2 * r {
        return Err(Error::BadIndexSet(format!("hook boundary needs a ≥ 2r, got a = {a}")));
    }
    let spin = f.spin_factor();
    let rhs = f.qi(f.fermionic(), 2 * r - a - 1).mul_ref(&f.qi(f.bosonic(), a)).scale(&(&spin * &spin));
    Ok(t_column(f, a)?.residual(&rhs))
}

/// `𝕋_{r,1} − Π(z^{1/2} + z^{−1/2}) Q_𝔅^{[r−1/2]}`
pub fn spin_column_residual(f: &BrFamily) -> Result<Series> {
    let r = f.r() as i64;
    let rhs = f.qh(f.bosonic(), 2 * r - 1).scale(&f.spin_factor());
    Ok(t_br(f, r, 1)?.residual(&rhs))
}

/// The expansion of `Q_{b,f}/(z_b − z_f)` obtained by applying the fermionic relation `c` times.
pub fn qbf_expand_residual(f: &BrFamily, b: usize, ferm: usize, c: i64) -> Result<Series> {
    if !f.bosonic().contains(b) || !f.fermionic().contains(ferm) || c < 0 {
        return Err(Error::BadIndexSet(format!("need b bosonic, f fermionic, c ≥ 0; got ({b}, {ferm}, {c})")));
    }
    let (zb, zf) = (f.z(b).clone(), f.z(ferm).clone());
    let x = &zb / &zf;
    let diff = (&zb - &zf).recip();
    let bf = Subset::single(b).with(ferm);
    let e = Subset::EMPTY;
    let lhs = f.qi(bf, 0).scale(&diff);
    let lead = f.qi(bf, 2 * c).mul_ref(&f.qi(e, 0)).div_ref(&f.qi(e, 2 * c))?.scale(&(rat_pow(&x, c) * &diff));
    let mut tail = Frac::zero(f.order());
    for k in 1..=c {
        let num = f.qi(Subset::single(b), 2 * k - 1).mul_ref(&f.qi(Subset::single(ferm), 2 * k - 1)).mul_ref(&f.qi(e, 0));
        let term = num.div_ref(&f.qi(e, 2 * k - 2).mul_ref(&f.qi(e, 2 * k)))?;
        tail = tail.add_ref(&term.scale(&rat_pow(&x, k - 1)));
    }
    let rhs = lead.sub_ref(&tail.scale(&zf.recip()));
    Ok(lhs.residual(&rhs))
}

/// `D(𝔅|∅)/D(𝔅|𝔉) − Π(z^{1/2} + z^{−1/2})²`
pub fn denominator_ratio_residual(f: &BrFamily) -> Result<Rat> {
    let z = f.family().z();
    let lhs = denom_d(z, f.bosonic(), Subset::EMPTY)? / denom_d(z, f.bosonic(), f.fermionic())?;
    let spin = f.spin_factor();
    Ok(lhs - &spin * &spin)
}

/// The split identity for `D(I|∅) D(J|𝔉) / D(𝔅|𝔉)` with `|I| = 2r − a − 1`.
pub fn denominator_split_residual(f: &BrFamily, a: i64, set: Subset) -> Result<Rat> {
    let r = f.r();
    let bos = f.bosonic();
    if a < 1 || a > 2 * r as i64 - 1 || !set.is_subset_of(bos) || set.len() as i64 != 2 * r as i64 - a - 1 {
        return Err(Error::BadIndexSet(format!("I = {set} does not have size 2r − a − 1 for a = {a}")));
    }
    let j = bos.minus(set);
    let z = f.family().z();
    let lhs = denom_d(z, set, Subset::EMPTY)? * denom_d(z, j, f.fermionic())? / denom_d(z, bos, f.fermionic())?;
    let is = super::star_set(r, set);
    let js = super::star_set(r, j);
    let mut rhs = sign_rat(a + 1) * Rat::from_integer(epsilon(set, j).into());
    for b in is.iter() {
        rhs *= rat_pow(z.z(b), 2 * a - 2 * r as i64 + 1) * (z.z(b) + Rat::one());
        for b2 in js.iter() {
            rhs /= z.z(b) - z.z(b2);
        }
    }
    Ok(lhs - rhs)
}

/// Index range of the T-system: `a < r` with `s ≤ smax`, `a = r` with spin label up to `2 smax`.
pub fn tsystem_points(r: usize, smax: i64) -> Vec<(i64, i64)> {
    let r = r as i64;
    let mut out: Vec<(i64, i64)> = (1..r).flat_map(|a| (1..=smax).map(move |s| (a, s))).collect();
    out.extend((1..=2 * smax).map(|s| (r, s)));
    out
}

fn shape_name(r: i64, a: i64, s: i64) -> &'static str {
    if a < r - 1 {
        "br/tsystem-interior"
    } else if a == r - 1 {
        "br/tsystem-next-to-spin"
    } else if s % 2 == 0 {
        "br/tsystem-spin-even"
    } else {
        "br/tsystem-spin-odd"
    }
}

/// T-system relations, boundary values and the two spellings of `Φ`.
pub fn check_tsystem(f: &BrFamily, smax: i64) -> Vec<Report> {
    let table = TTable::new(f);
    let r = f.r() as i64;
    let o = f.order();
    let pts = tsystem_points(f.r(), smax);
    let mut reps = crate::exec::map(&pts, |&(a, s)| {
        let params = Params::new().with("r", r).with("a", a).with("s", s);
        Report::from_residual(shape_name(r, a, s), params, Tag::Proven, o, || tsystem_residual_with(&table, a, s))
    });
    for s in 0..=smax {
        let params = Params::new().with("r", r).with("a", 0).with("s", s);
        reps.push(Report::from_residual("br/tsystem-boundary", params, Tag::Proven, o, || {
            Ok(table.get(0, s)?.residual(&t_boundary(f, s)))
        }));
    }
    for a in 1..=r {
        let params = Params::new().with("r", r).with("a", a).with("s", 0);
        reps.push(Report::from_residual("br/tsystem-boundary", params, Tag::Proven, o, || {
            Ok(table.get(a, 0)?.residual(&Frac::one(o)))
        }));
    }
    let mut spell: Vec<(i64, i64)> = (0..r).flat_map(|a| (0..=smax).map(move |s| (a, s))).collect();
    spell.extend((0..=2 * smax).map(|s| (r, s)));
    reps.extend(crate::exec::map(&spell, |&(a, s)| {
        let params = Params::new().with("r", r).with("a", a).with("s", s);
        Report::from_residual("br/phi-spelling", params, Tag::Proven, o, || {
            Ok(phi(f, a, s, Spelling::Full)?.residual(&phi(f, a, s, Spelling::Empty)?))
        })
    }));
    reps.extend(crate::exec::map(&spell, |&(a, s)| {
        let params = Params::new().with("r", r).with("a", a).with("s", s);
        Report::from_residual("br/t-sum", params, Tag::Proven, o, || {
            Ok(table.get(a, s)?.residual(&t_br_sum(f, a, s)?))
        })
    }));
    reps.push(Report::from_residual("br/spin-column", Params::new().with("r", r), Tag::Proven, o, || {
        spin_column_residual(f)
    }));
    reps
}

/// The T+T identity for `a ∈ [amin, amax]`, the hook boundary factorization and the
/// expansion of `Q_{b,f}` used in its derivation.
pub fn check_t_plus_t(f: &BrFamily, amin: i64, amax: i64) -> Vec<Report> {
    let r = f.r() as i64;
    let o = f.order();
    let ks: Vec<i64> = (amin..=amax).collect();
    let mut reps = crate::exec::map(&ks, |&a| {
        Report::from_residual("br/t+t", Params::new().with("r", r).with("a", a), Tag::Proven, o, || {
            t_plus_t_residual(f, a)
        })
    });
    reps.extend(ks.iter().filter(|&&a| a >= 2 * r).map(|&a| {
        Report::from_residual("br/hook-boundary", Params::new().with("r", r).with("a", a), Tag::Proven, o, || {
            hook_boundary_residual(f, a)
        })
    }));
    let ferm = 2 * f.r() + 1;
    let jobs: Vec<(usize, i64)> = (1..=2 * f.r()).flat_map(|b| (0..=2 * r).map(move |c| (b, c))).collect();
    reps.extend(crate::exec::map(&jobs, |&(b, c)| {
        let params = Params::new().with("r", r).with("b", b).with("f", ferm).with("c", c);
        Report::from_residual("br/qbf-expand", params, Tag::Proven, o, || qbf_expand_residual(f, b, ferm, c))
    }));
    reps.push(Report::from_exact("br/denominator-ratio", Params::new().with("r", r), Tag::Proven, || {
        denominator_ratio_residual(f)
    }));
    for a in 1..2 * r {
        for set in f.bosonic().subsets_of_size((2 * r - a - 1) as usize) {
            let params = Params::new().with("r", r).with("a", a).with("I", set);
            reps.push(Report::from_exact("br/denominator-split", params, Tag::Proven, || {
                denominator_split_residual(f, a, set)
            }));
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::br::random_seeded;
    use crate::exactring::{rat, ShiftBase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    fn seeded2() -> &'static BrFamily {
        static F: OnceLock<BrFamily> = OnceLock::new();
        F.get_or_init(|| random_seeded(&mut ChaCha8Rng::seed_from_u64(7), 2, &ShiftBase::default(), 5).unwrap())
    }

    fn failures(reps: &[Report]) -> Vec<String> {
        reps.iter().filter(|x| !x.passed()).map(|x| x.to_string()).collect()
    }

    #[test]
    fn ones_family_boundary_values() {
        let f = BrFamily::ones(2, vec![rat(3, 1), rat(5, 2)], ShiftBase::default(), 2).unwrap();
        for a in 1..=2 {
            assert_eq!(t_br(&f, a, 0).unwrap().to_series().unwrap(), Series::one(2));
        }
        let sum = t_br_sum(&f, 1, 1).unwrap();
        assert!(t_br(&f, 1, 1).unwrap().residual(&sum).is_zero());
        assert_eq!(t_br(&f, 2, 1).unwrap().to_series().unwrap(), Series::constant(f.spin_factor(), 2));
    }

    #[test]
    fn ones_family_vector_character() {
        let w = vec![rat(3, 1), rat(5, 2)];
        let f = BrFamily::ones(2, w, ShiftBase::default(), 1).unwrap();
        let expect = (1..=4).fold(Rat::one(), |acc, b| acc + f.z(b));
        assert_eq!(t_br(&f, 1, 1).unwrap().to_series().unwrap().constant_term(), expect);
    }

    #[test]
    fn seeded_tsystem_r2() {
        let f = seeded2();
        let bad = failures(&check_tsystem(f, 2));
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn seeded_t_plus_t_r2() {
        let f = seeded2();
        let bad = failures(&check_t_plus_t(f, -1, 5));
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn perturbation_breaks_tsystem() {
        let f = seeded2().perturbed(Subset::single(2), 1, &rat(1, 1));
        assert!(!tsystem_residual(&f, 1, 1).unwrap().is_zero());
    }
}
