//! Kirillov–Reshetikhin characters of `so(2r+1)` as the `Q ≡ 1` limit of the T-functions.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::br::{t_br, BrFamily};
use crate::error::{Error, Result};
use crate::exactring::{det_series, rat_int, Rat, Series, ShiftBase};
use crate::qfamily::Subset;
use crate::report::{Params, Report, Tag};
use crate::wronskian::{sign_rat, wronskian_layout};
use crate::young::{in_hook, Partition};

/// A character value at sampled twists.
pub type CharValue = Rat;

/// `χ_{a,s}` at `z_b = w_b²`, read off the all-ones family; for `a = r` the index `s` is the full spin label.
pub fn kr_character(r: usize, a: i64, s: i64, w: &[Rat]) -> Result<CharValue> {
    let f = BrFamily::ones(r, w.to_vec(), ShiftBase::default(), 1)?;
    character_of(&f, a, s)
}

fn character_of(f: &BrFamily, a: i64, s: i64) -> Result<CharValue> {
    Ok(t_br(f, a, s)?.to_series()?.constant_term())
}

/// Memoized characters at one twist sample.
pub struct CharTable {
    f: BrFamily,
    cache: Mutex<HashMap<(i64, i64), Rat>>,
}

impl CharTable {
    pub fn new(r: usize, w: &[Rat]) -> Result<Self> {
        let f = BrFamily::ones(r, w.to_vec(), ShiftBase::default(), 1)?;
        Ok(CharTable { f, cache: Mutex::new(HashMap::new()) })
    }

    pub fn r(&self) -> usize {
        self.f.r()
    }

    pub fn w(&self) -> &[Rat] {
        self.f.w()
    }

    pub fn get(&self, a: i64, s: i64) -> Result<Rat> {
        if let Some(v) = self.cache.lock().expect("character cache").get(&(a, s)) {
            return Ok(v.clone());
        }
        let v = character_of(&self.f, a, s)?;
        self.cache.lock().expect("character cache").insert((a, s), v.clone());
        Ok(v)
    }
}

/// LHS − RHS of the Q-system relation at `(a, s)`, with characters supplied by `chi`.
pub fn qsystem_residual_with(r: usize, a: i64, s: i64, chi: impl Fn(i64, i64) -> Result<Rat>) -> Result<Rat> {
    let ri = r as i64;
    if a < 1 || a > ri || s < 1 {
        return Err(Error::BadIndexSet(format!("Q-system needs 1 ≤ a ≤ {r} and s ≥ 1, got ({a}, {s})")));
    }
    let sq = |x: Rat| &x * &x;
    let lhs = sq(chi(a, s)?);
    let first = chi(a, s + 1)? * chi(a, s - 1)?;
    let second = if a < ri - 1 {
        chi(a - 1, s)? * chi(a + 1, s)?
    } else if a == ri - 1 {
        chi(a - 1, s)? * chi(ri, 2 * s)?
    } else if s % 2 == 0 {
        sq(chi(ri - 1, s / 2)?)
    } else {
        let k = (s + 1) / 2;
        chi(ri - 1, k - 1)? * chi(ri - 1, k)?
    };
    Ok(lhs - first - second)
}

/// The Q-system residual at `(a, s)` for twists `w`.
pub fn qsystem_residual(r: usize, a: i64, s: i64, w: &[Rat]) -> Result<Rat> {
    let t = CharTable::new(r, w)?;
    qsystem_residual_with(r, a, s, |x, y| t.get(x, y))
}

/// Every Q-system relation with `1 ≤ s ≤ smax` (spin labels up to `2 smax`) at each twist sample.
pub fn check_qsystem(r: usize, smax: i64, samples: &[Vec<Rat>]) -> Vec<Report> {
    let ri = r as i64;
    let tables: Vec<Result<CharTable>> = samples.iter().map(|w| CharTable::new(r, w)).collect();
    let mut jobs = Vec::new();
    for k in 0..samples.len() {
        for a in 1..=ri {
            let top = if a < ri { smax } else { 2 * smax };
            jobs.extend((1..=top).map(|s| (k, a, s)));
        }
    }
    crate::exec::map(&jobs, |&(k, a, s)| {
        let params = Params::new().with("r", r).with("a", a).with("s", s).with("sample", k);
        Report::from_exact("chars/qsystem", params, Tag::Proven, || {
            let t = tables[k].as_ref().map_err(Clone::clone)?;
            qsystem_residual_with(r, a, s, |x, y| t.get(x, y))
        })
    })
}

/// Twists `w_j = 1 + ε c_j` as series in `ε`.
fn eps_twists(r: usize, dirs: &[Rat], order: usize) -> Result<Vec<Series>> {
    if dirs.len() != r {
        return Err(Error::BadSpec(format!("need {r} directions, got {}", dirs.len())));
    }
    let mut seen: Vec<&Rat> = Vec::new();
    for c in dirs {
        if c.is_zero() || seen.iter().any(|d| *d == c || **d == -c) {
            return Err(Error::DegenerateParameters("directions must be nonzero and distinct up to sign".into()));
        }
        seen.push(c);
    }
    let mut z = vec![Series::zero(order); 2 * r + 1];
    for (j, c) in dirs.iter().enumerate() {
        let w = Series::from_coeffs(vec![Rat::one(), c.clone()], order);
        let sq = w.mul_ref(&w);
        z[2 * r - 1 - j] = sq.inv()?;
        z[j] = sq;
    }
    z[2 * r] = Series::constant(rat_int(-1), order);
    Ok(z)
}

/// Limit `ε → 0` of `num / den` when `den` has a finite valuation below the truncation.
fn ratio_limit(num: &Series, den: &Series) -> Result<Rat> {
    let v = den
        .first_nonzero()
        .ok_or_else(|| Error::DegenerateParameters("denominator vanishes to the truncation order".into()))?;
    if let Some(k) = num.first_nonzero() {
        if k < v {
            return Err(Error::DegenerateParameters(format!("pole of order {} at ε = 0", v - k)));
        }
    }
    Ok(num.coeff(v) / den.coeff(v))
}

/// `𝖳^{B,F}_μ` at `Q ≡ 1` with the twists given as `ε`-series; returns numerator and denominator.
fn wronskian_unit(z: &[Series], mu: &Partition, b: Subset, f: Subset, order: usize) -> Result<(Series, Series)> {
    let (m, n) = (b.len(), f.len());
    if !in_hook(mu, m, n) {
        return Ok((Series::zero(order), Series::one(order)));
    }
    let (sign_exp, rlab, slab) = wronskian_layout(mu, m, n);
    let zv = |a: usize| &z[a - 1];
    let (bs, fs) = (b.to_vec(), f.to_vec());
    let mut rows = Vec::new();
    for &bi in &bs {
        let mut row = Vec::new();
        for &fi in &fs {
            row.push(zv(bi).sub_ref(zv(fi)).inv()?);
        }
        for &j in &slab {
            row.push(zv(bi).pow(j - 1)?);
        }
        rows.push(row);
    }
    for &i in &rlab {
        let mut row = Vec::new();
        for &fi in &fs {
            row.push(zv(fi).neg_ref().pow(i - 1)?);
        }
        row.extend(slab.iter().map(|_| Series::zero(order)));
        rows.push(row);
    }
    let mut num = det_series(order, rows).scale(&sign_rat(sign_exp));
    let mut den = Series::one(order);
    for (x, &b1) in bs.iter().enumerate() {
        for &b2 in &bs[x + 1..] {
            den = den.mul_ref(&zv(b1).sub_ref(zv(b2)));
        }
    }
    for (x, &f1) in fs.iter().enumerate() {
        for &f2 in &fs[x + 1..] {
            den = den.mul_ref(&zv(f2).sub_ref(zv(f1)));
        }
    }
    for &b1 in &bs {
        for &f1 in &fs {
            num = num.mul_ref(&zv(b1).sub_ref(zv(f1)));
        }
    }
    Ok((num, den))
}

/// `χ_{a,s}` at `z → 1`, approached along `w_j = 1 + ε c_j`.
pub fn kr_dimension_along(r: usize, a: i64, s: i64, dirs: &[Rat]) -> Result<Rat> {
    let ri = r as i64;
    if r < 2 || a < 0 || a > ri || s < 0 {
        return Err(Error::BadIndexSet(format!("(a, s) = ({a}, {s}) outside 0 ≤ a ≤ {r}, s ≥ 0")));
    }
    if a == 0 || s == 0 {
        return Ok(Rat::one());
    }
    let order = r * (2 * r - 1) + 1;
    let z = eps_twists(r, dirs, order)?;
    let bos = Subset::range(1, 2 * r);
    let ferm = Subset::single(2 * r + 1);
    let (mu, f, spin) = if a < ri {
        (Partition::rectangle(a as usize, s as usize), ferm, 1)
    } else if s % 2 == 0 {
        (Partition::rectangle(r, (s / 2) as usize), ferm, 1)
    } else {
        (Partition::rectangle(r, (s / 2) as usize), Subset::EMPTY, 1 << r)
    };
    let (num, den) = wronskian_unit(&z, &mu, bos, f, order)?;
    Ok(ratio_limit(&num, &den)? * rat_int(spin))
}

/// `χ_{a,s}` at `z → 1` along the default directions `c_j = j`.
pub fn kr_dimension(r: usize, a: i64, s: i64) -> Result<Rat> {
    let dirs: Vec<Rat> = (1..=r as i64).map(rat_int).collect();
    kr_dimension_along(r, a, s, &dirs)
}

/// The Q-system at `z → 1`, plus the single-box and spinor dimensions.
pub fn check_dimensions(r: usize, smax: i64) -> Vec<Report> {
    let ri = r as i64;
    let mut reps = Vec::new();
    let dim = |a, s| kr_dimension(r, a, s);
    for a in 1..=ri {
        let top = if a < ri { smax } else { 2 * smax };
        for s in 1..=top {
            let params = Params::new().with("r", r).with("a", a).with("s", s);
            reps.push(Report::from_exact("chars/qsystem-dim", params, Tag::Proven, || {
                qsystem_residual_with(r, a, s, dim)
            }));
        }
    }
    let expected = [(1, 1, rat_int(2 * ri + 1)), (ri, 1, rat_int(1 << r))];
    for (a, s, want) in expected {
        let params = Params::new().with("r", r).with("a", a).with("s", s);
        reps.push(Report::from_exact("chars/dimension", params, Tag::Proven, || Ok(kr_dimension(r, a, s)? - &want)));
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;
    use crate::qfamily::Grading;
    use crate::tableaux::{enumerate_tableaux, IndexTuple};
    use crate::young::SkewDiagram;

    fn sample(r: usize, k: i64) -> Vec<Rat> {
        (0..r as i64).map(|j| rat(2 + j + k, 1 + (j + k) % 3)).collect()
    }

    /// Admissible tableaux of a rectangle, each fermionic entry counted with `−z_{2r+1} = 1`.
    fn tableau_count(r: usize, a: usize, s: usize, fermion: bool) -> usize {
        let g = Grading::new(2 * r, usize::from(fermion));
        let d = SkewDiagram::straight(Partition::rectangle(a, s));
        enumerate_tableaux(&g, &IndexTuple::standard(&g), &d).len()
    }

    #[test]
    fn boundary_values() {
        let w = sample(3, 0);
        for a in 0..=3 {
            assert_eq!(kr_character(3, a, 0, &w).unwrap(), Rat::one());
        }
        for s in 0..4 {
            assert_eq!(kr_character(3, 0, s, &w).unwrap(), Rat::one());
        }
    }

    #[test]
    fn single_box_is_a_twist_sum() {
        let w = sample(2, 1);
        let f = BrFamily::ones(2, w.clone(), ShiftBase::default(), 1).unwrap();
        let z: Rat = (1..=4).map(|b| f.z(b).clone()).sum();
        assert_eq!(kr_character(2, 1, 1, &w).unwrap(), z + Rat::one());
    }

    #[test]
    fn qsystem_exact_r2() {
        let samples: Vec<_> = (0..3).map(|k| sample(2, k)).collect();
        let bad: Vec<String> =
            check_qsystem(2, 5, &samples).iter().filter(|x| !x.passed()).map(|x| x.to_string()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn perturbed_character_breaks_qsystem() {
        let t = CharTable::new(2, &sample(2, 0)).unwrap();
        let res = qsystem_residual_with(2, 1, 2, |a, s| {
            let v = t.get(a, s)?;
            Ok(if (a, s) == (1, 3) { v + Rat::one() } else { v })
        })
        .unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn dimensions_match_tableau_counts() {
        for r in 2..=3usize {
            let ri = r as i64;
            for a in 1..ri {
                for s in 1..=2 {
                    let want = tableau_count(r, a as usize, s as usize, true);
                    assert_eq!(kr_dimension(r, a, s).unwrap(), rat_int(want as i64), "r={r} a={a} s={s}");
                }
            }
            for label in 1..=4i64 {
                let k = (label / 2) as usize;
                let want = if label % 2 == 0 {
                    tableau_count(r, r, k, true)
                } else {
                    tableau_count(r, r, k, false) << r
                };
                assert_eq!(kr_dimension(r, ri, label).unwrap(), rat_int(want as i64), "r={r} label={label}");
            }
        }
    }

    #[test]
    fn dimension_is_direction_independent() {
        let a = kr_dimension_along(3, 2, 2, &[rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        let b = kr_dimension_along(3, 2, 2, &[rat(1, 2), rat(-5, 3), rat(7, 1)]).unwrap();
        assert_eq!(a, b);
        assert!(kr_dimension_along(3, 2, 2, &[rat(1, 1), rat(-1, 1), rat(3, 1)]).is_err());
    }

    #[test]
    fn known_dimensions() {
        for r in 2..=4usize {
            let ri = r as i64;
            assert_eq!(kr_dimension(r, 1, 1).unwrap(), rat_int(2 * ri + 1));
            assert_eq!(kr_dimension(r, ri, 1).unwrap(), rat_int(1 << r));
        }
        assert!(check_dimensions(2, 3).iter().all(Report::passed));
    }
}
