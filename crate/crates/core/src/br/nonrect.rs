//! Determinant and Wronskian forms for general diagrams, the finite-width
//! factorization and the column splitting of tableau sums.

use super::{BrFamily, Columns, Spelling};
use crate::error::{Error, Result};
use crate::exactring::{det, Frac, HalfInt, Series};
use crate::qfamily::Subset;
use crate::report::{Params, Report, Tag};
use crate::tableaux::{column_sum, IndexTuple};
use crate::wronskian::t_wronskian;
use crate::young::{Partition, SkewDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonrectKind {
    /// Tensor-type determinant of single columns.
    Tensor,
    /// Spinor-type determinant with one column of spinor T-functions.
    Spinor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonrectVariant {
    /// Evaluated on the rotated diagram.
    Rotated,
    /// Mirrored layout evaluated on the unrotated diagram.
    Mirrored,
}

impl NonrectVariant {
    pub fn name(self) -> &'static str {
        match self {
            NonrectVariant::Rotated => "rotated",
            NonrectVariant::Mirrored => "mirrored",
        }
    }
}

fn h(p: &Partition, i: i64) -> i64 {
    p.part(i as usize) as i64
}

/// `Φ_μ`, reducing to the rectangular normalization when `μ = (s^a)`.
pub fn phi_mu(f: &BrFamily, mu: &Partition, spelling: Spelling) -> Result<Frac> {
    let r = f.r() as i64;
    let conj = mu.conjugate();
    let (w, ht) = (mu.width() as i64, mu.len() as i64);
    let top = match spelling {
        Spelling::Full => f.full(),
        Spelling::Empty => Subset::EMPTY,
    };
    let e = Subset::EMPTY;
    let mut num = Frac::one(f.order());
    for j in 1..=w {
        num = num.mul_ref(&f.qi(e, 2 * r - 1 - w + ht - 2 * h(&conj, j) + 2 * j)).mul_ref(&f.qi(top, w + ht - 2 * j));
    }
    num.div_ref(&f.qi(e, 2 * r - 1 + w - ht).mul_ref(&f.qi(top, -w + ht)))
}

/// The determinant over `𝖳_{k,1}` (and `𝕋_{r,1}` for the spinor kind) attached to a skew diagram.
pub fn t_nonrect(f: &BrFamily, d: &SkewDiagram, kind: NonrectKind, variant: NonrectVariant) -> Result<Frac> {
    t_nonrect_with(&Columns::new(f), f, d, kind, variant)
}

pub fn t_nonrect_with(
    c: &Columns,
    f: &BrFamily,
    d: &SkewDiagram,
    kind: NonrectKind,
    variant: NonrectVariant,
) -> Result<Frac> {
    let r = f.r() as i64;
    let mc = d.mu().conjugate();
    let lc = d.lam().conjugate();
    let w = d.mu().width() as i64;
    let ht = d.mu().len() as i64;
    let mut rows = Vec::with_capacity(w as usize);
    for i in 1..=w {
        let mut row = Vec::with_capacity(w as usize);
        for j in 1..=w {
            let entry = match (kind, variant) {
                (NonrectKind::Tensor, NonrectVariant::Rotated) => {
                    let (mi, lj) = (h(&mc, i), h(&lc, j));
                    c.column(mi - lj - i + j, 2 * (w - ht + mi + lj - i - j + 1))?
                }
                (NonrectKind::Tensor, NonrectVariant::Mirrored) => {
                    let (mi, lj) = (h(&mc, i), h(&lc, j));
                    c.column(mi - lj - i + j, 2 * (-w + ht - mi - lj + i + j - 1))?
                }
                (NonrectKind::Spinor, NonrectVariant::Rotated) => {
                    let (mi, lj) = (h(&mc, i), h(&lc, j));
                    if j < w {
                        c.column(mi - lj - i + j, 2 * (2 * w + mi + lj - i - j - r) - 1)?
                    } else {
                        c.spin(2 * (2 * w + 2 * mi - 2 * i - 2 * r))?
                    }
                }
                (NonrectKind::Spinor, NonrectVariant::Mirrored) => {
                    let li = h(&lc, i);
                    if j == 1 {
                        c.spin(2 * (2 * i - 2 + 2 * (h(&mc, 1) - li - r)))?
                    } else {
                        let mj = h(&mc, j);
                        c.column(mj - li + i - j, 2 * (2 * h(&mc, 1) - mj - li + i + j - r) - 5)?
                    }
                }
            };
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(det(f.order(), &rows))
}

/// `Φ_μ 𝖳^{𝔅,𝔉}_μ`
pub fn wronskian_even(f: &BrFamily, mu: &Partition) -> Result<Frac> {
    Ok(phi_mu(f, mu, Spelling::Full)?.mul_ref(&t_wronskian(f.family(), mu, f.bosonic(), f.fermionic())?))
}

/// Tensor determinant of the rotated diagram against `Φ_μ 𝖳^{𝔅,𝔉}_μ`.
pub fn even_residual(f: &BrFamily, mu: &Partition, variant: NonrectVariant) -> Result<Series> {
    let d = match variant {
        NonrectVariant::Rotated => SkewDiagram::straight(mu.clone()).rotate180(),
        NonrectVariant::Mirrored => SkewDiagram::straight(mu.clone()),
    };
    Ok(t_nonrect(f, &d, NonrectKind::Tensor, variant)?.residual(&wronskian_even(f, mu)?))
}

fn check_height(f: &BrFamily, mu: &Partition) -> Result<()> {
    if mu.len() > f.r() {
        return Err(Error::InvalidDiagram(format!("({mu}) has more than r = {} rows", f.r())));
    }
    Ok(())
}

/// `Q_{𝔅,𝔉}^{[−μ_1+μ'_1+1/2]} Φ_μ^{[1/2]} Π(z^{1/2} + z^{−1/2}) 𝖳^{𝔅,∅ [−1/2]}_μ`
pub fn wronskian_odd(f: &BrFamily, mu: &Partition) -> Result<Frac> {
    check_height(f, mu)?;
    let base = f.base();
    let d = mu.len() as i64 - mu.width() as i64;
    let half = HalfInt::half(0);
    let t = t_wronskian(f.family(), mu, f.bosonic(), Subset::EMPTY)?.shift(-half, base);
    let p = phi_mu(f, mu, Spelling::Full)?.shift(half, base);
    Ok(f.qh(f.full(), 2 * d + 1).mul_ref(&p).mul_ref(&t).scale(&f.spin_factor()))
}

/// Spinor determinant of `μ + (1^r)` against its Wronskian form; needs `μ'_1 ≤ r`.
pub fn odd_residual(f: &BrFamily, mu: &Partition, variant: NonrectVariant) -> Result<Series> {
    check_height(f, mu)?;
    let widened = mu.add_column(f.r());
    let d = match variant {
        NonrectVariant::Rotated => SkewDiagram::straight(widened).rotate180(),
        NonrectVariant::Mirrored => SkewDiagram::straight(widened),
    };
    let shift = mu.len() as i64 - mu.width() as i64 - f.r() as i64;
    let lhs = t_nonrect(f, &d, NonrectKind::Spinor, variant)?.shift(HalfInt::int(shift), f.base());
    Ok(lhs.residual(&wronskian_odd(f, mu)?))
}

/// The finite-`c` factorization of `𝖳^{𝔅,𝔉}_{μ+(1^{r+c})}`; needs `c > r` and `μ'_1 ≤ r`.
pub fn factorization_residual(f: &BrFamily, mu: &Partition, c: i64) -> Result<Series> {
    check_height(f, mu)?;
    let r = f.r() as i64;
    if c <= r {
        return Err(Error::BadIndexSet(format!("c = {c} must exceed r = {r}")));
    }
    let base = f.base();
    let (w, ht) = (mu.width() as i64, mu.len() as i64);
    let big = mu.add_column((r + c) as usize);
    let lhs = t_wronskian(f.family(), &big, f.bosonic(), f.fermionic())?
        .shift(HalfInt::from_doubled(2 * (ht - r - c) - 1), base);
    let e = Subset::EMPTY;
    let pre = f
        .qh(e, 2 * (ht + w - 2 * c) - 1)
        .div_ref(&f.qh(e, 2 * (ht - w - 2 * c) - 1).mul_ref(&f.qh(e, 2 * (-ht + w + 2 * r) - 1)))?;
    let t = t_wronskian(f.family(), mu, f.bosonic(), Subset::EMPTY)?.shift(HalfInt::half(-1), base);
    let spin = f.spin_factor();
    let rhs = pre
        .mul_ref(&f.qh(f.fermionic(), 2 * (ht - w - 2 * c) - 3))
        .mul_ref(&t)
        .scale(&(&spin * &spin));
    Ok(lhs.residual(&rhs))
}

/// Splits the `(2r|1)` single-column tableau sum into `(2r|0)` ones.
pub fn f_column_residual(f: &BrFamily, a: i64) -> Result<Series> {
    if a < 0 {
        return Err(Error::BadIndexSet(format!("column height {a} is negative")));
    }
    let g = f.family().grading();
    let n = 2 * f.r();
    let full = IndexTuple::new(g, (1..=n + 1).collect())?;
    let bos = IndexTuple::new(g, (1..=n).collect())?;
    let fam = f.family();
    let base = f.base();
    let lhs = column_sum(fam, &full, a)?;
    let (qb, qt) = (f.bosonic(), f.full());
    let mut rhs = Frac::zero(f.order());
    for k in 0..=a.min(n as i64) {
        let col = column_sum(fam, &bos, k)?.shift(HalfInt::int(k - a - 1), base);
        let num = f.qi(qb, a).mul_ref(&f.qi(qt, 2 * k - a - 1));
        let den = f.qi(qb, 2 * k - a).mul_ref(&f.qi(qt, a - 1));
        rhs = rhs.add_ref(&col.mul_ref(&num.div_ref(&den)?));
    }
    Ok(lhs.residual(&rhs))
}

fn label(mu: &Partition) -> String {
    format!("({mu})")
}

/// Wronskian forms of the tensor and spinor determinants, the factorization and the column splitting.
pub fn check_nonrect(f: &BrFamily, even: &[Partition], odd: &[Partition], fact: &[(Partition, i64)], amax: i64) -> Vec<Report> {
    let r = f.r();
    let o = f.order();
    let variants = [NonrectVariant::Rotated, NonrectVariant::Mirrored];
    let jobs_even: Vec<(Partition, NonrectVariant)> =
        even.iter().flat_map(|m| variants.iter().map(move |&v| (m.clone(), v))).collect();
    let mut reps = crate::exec::map(&jobs_even, |(mu, v)| {
        let tag = if mu.is_rectangular() { Tag::Proven } else { Tag::Conjecture };
        let params = Params::new().with("r", r).with("mu", label(mu)).with("variant", v.name());
        Report::from_residual("br/nonrect-even", params, tag, o, || even_residual(f, mu, *v))
    });
    let jobs_odd: Vec<(Partition, NonrectVariant)> =
        odd.iter().flat_map(|m| variants.iter().map(move |&v| (m.clone(), v))).collect();
    reps.extend(crate::exec::map(&jobs_odd, |(mu, v)| {
        let params = Params::new().with("r", r).with("mu", label(mu)).with("variant", v.name());
        Report::from_residual("br/nonrect-odd", params, Tag::Proven, o, || odd_residual(f, mu, *v))
    }));
    reps.extend(crate::exec::map(fact, |(mu, c)| {
        let params = Params::new().with("r", r).with("mu", label(mu)).with("c", c);
        Report::from_residual("br/factorization", params, Tag::Proven, o, || factorization_residual(f, mu, *c))
    }));
    let cols: Vec<i64> = (0..=amax).collect();
    reps.extend(crate::exec::map(&cols, |&a| {
        Report::from_residual("br/column-split", Params::new().with("r", r).with("a", a), Tag::Proven, o, || {
            f_column_residual(f, a)
        })
    }));
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::br::{cbr_br, phi, random_seeded, CbrVariant};
    use crate::exactring::{rat, ShiftBase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn seeded2() -> &'static BrFamily {
        static F: OnceLock<BrFamily> = OnceLock::new();
        F.get_or_init(|| random_seeded(&mut ChaCha8Rng::seed_from_u64(21), 2, &ShiftBase::default(), 4).unwrap())
    }

    #[test]
    fn rectangles_reduce_to_rectangular_forms() {
        let f = seeded2();
        for (a, s) in [(1, 1), (1, 2), (2, 1)] {
            let mu = Partition::rectangle(a as usize, s as usize);
            let d = SkewDiagram::straight(mu.clone());
            let det = t_nonrect(f, &d, NonrectKind::Tensor, NonrectVariant::Rotated).unwrap();
            if a < 2 {
                assert!(det.residual(&cbr_br(f, a, s, CbrVariant::DecSpinLast).unwrap()).is_zero());
                assert!(phi_mu(f, &mu, Spelling::Full).unwrap().residual(&phi(f, a, s, Spelling::Full).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn seeded_nonrect_r2() {
        let f = seeded2();
        let even = [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2, 1])];
        let odd = [Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])];
        let fact = [(Partition::empty(), 3), (p(&[1]), 3), (p(&[2, 1]), 3)];
        let reps = check_nonrect(f, &even, &odd, &fact, 5);
        let bad: Vec<String> = reps.iter().filter(|x| !x.passed()).map(|x| x.to_string()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn factorization_holds_for_any_wronskian_data() {
        let mu = p(&[2, 1]);
        for set in [Subset::EMPTY, Subset::single(1), Subset::single(5)] {
            let h = seeded2().perturbed(set, 1, &rat(1, 1));
            assert!(factorization_residual(&h, &mu, 3).unwrap().is_zero());
            assert!(f_column_residual(&h, 3).unwrap().is_zero());
        }
    }

    #[test]
    fn perturbed_family_fails() {
        let g = seeded2().perturbed(Subset::single(3), 1, &rat(1, 1));
        let mu = p(&[2, 1]);
        assert!(!even_residual(&g, &mu, NonrectVariant::Rotated).unwrap().is_zero());
        assert!(!odd_residual(&g, &mu, NonrectVariant::Mirrored).unwrap().is_zero());
    }

    #[test]
    fn spinor_form_rejects_tall_diagrams() {
        let f = BrFamily::ones(2, vec![rat(3, 1), rat(5, 2)], ShiftBase::default(), 2).unwrap();
        assert!(odd_residual(&f, &p(&[2, 2, 1]), NonrectVariant::Rotated).is_err());
        assert!(factorization_residual(&f, &p(&[1]), 2).is_err());
    }
}
