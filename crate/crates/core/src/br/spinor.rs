//! The spinor T-function as a sum over sign vectors of Q-ratios.

use super::{t_br, BrFamily};
use crate::error::{Error, Result};
use crate::exactring::{rat_int, rat_pow, Frac, Series};
use crate::qfamily::Subset;
use crate::report::{Params, Report, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorVariant {
    Direct,
    /// Every sign flipped in the summand.
    Flipped,
}

impl SpinorVariant {
    pub fn name(self) -> &'static str {
        match self {
            SpinorVariant::Direct => "direct",
            SpinorVariant::Flipped => "flipped",
        }
    }
}

/// `ρ_a` for `a = 1..=r`, with `s_{r+1} = −s_r`.
pub fn rho(signs: &[i64]) -> Vec<i64> {
    let r = signs.len();
    let mut out = Vec::with_capacity(r);
    let mut prefix = 0;
    for a in 0..r {
        let next = if a + 1 < r { signs[a + 1] } else { -signs[a] };
        let d = if a + 1 == r { 2 } else { 1 };
        out.push(2 * prefix + (signs[a] - next) / d);
        prefix += signs[a];
    }
    out
}

/// All `2^r` sign vectors, lexicographic with `+1` first.
pub fn sign_vectors(r: usize) -> Vec<Vec<i64>> {
    (0..1u32 << r)
        .map(|m| (0..r).map(|a| if m >> (r - 1 - a) & 1 == 0 { 1 } else { -1 }).collect())
        .collect()
}

/// The `2^r`-term sum of Q-ratios for `𝕋_{r,1}`.
pub fn t_spinor_sum(f: &BrFamily, variant: SpinorVariant) -> Result<Frac> {
    let r = f.r();
    let ri = r as i64;
    let o = f.order();
    let flip = match variant {
        SpinorVariant::Direct => 1,
        SpinorVariant::Flipped => -1,
    };
    let mut acc = Frac::zero(o);
    for signs in sign_vectors(r) {
        let rh = rho(&signs);
        let mut term = f.qh(Subset::EMPTY, 2 * ri - 1 - flip * 2 * signs[0]);
        let mut c = rat_int(1);
        for a in 1..=r {
            let sa = signs[a - 1];
            c *= rat_pow(&f.w()[a - 1], flip * sa);
            let prefix = Subset::range(1, a);
            let p = rh[a - 1];
            let e = if a < r { (sa - signs[a]) / 2 } else { sa };
            let (hi, lo) = if a < r { (2 * ri + 1, 2 * ri - 3) } else { (2 * ri, 2 * ri - 2) };
            let (up, down) = if flip == 1 { (hi + p, lo + p) } else { (lo - p, hi - p) };
            let ratio = f.qh(prefix, up).div_ref(&f.qh(prefix, down))?;
            term = term.mul_ref(&ratio.pow(e)?);
        }
        acc = acc.add_ref(&term.scale(&c));
    }
    Ok(acc)
}

/// The four-term rank-2 expansion multiplied through by `Q_1^{[3/2]} Q_{12}^{[1/2]} Q_{12}^{[5/2]}`.
pub fn tspf2_residual(f: &BrFamily) -> Result<Series> {
    if f.r() != 2 {
        return Err(Error::BadIndexSet(format!("the four-term expansion needs r = 2, got r = {}", f.r())));
    }
    let e = Subset::EMPTY;
    let q1 = Subset::single(1);
    let q12 = Subset::range(1, 2);
    let q = |s: Subset, d: i64| f.qh(s, d);
    let lhs = q(q1, 3).mul_ref(&q(q12, 1)).mul_ref(&q(q12, 5)).mul_ref(&t_br(f, 2, 1)?);
    let (w1, w2) = (&f.w()[0], &f.w()[1]);
    let terms = [
        (w1 * w2, [(e, 1), (q1, 3), (q12, 1), (q12, 7)]),
        (w1 / w2, [(e, 1), (q1, 7), (q12, 1), (q12, 3)]),
        (w2 / w1, [(e, 5), (q1, -1), (q12, 3), (q12, 5)]),
        ((w1 * w2).recip(), [(e, 5), (q1, 3), (q12, -1), (q12, 5)]),
    ];
    let mut rhs = Frac::zero(f.order());
    for (c, factors) in terms {
        let mut t = Frac::one(f.order());
        for (set, d) in factors {
            t = t.mul_ref(&q(set, d));
        }
        rhs = rhs.add_ref(&t.scale(&c));
    }
    Ok(lhs.residual(&rhs))
}

/// Both sign-sum forms against the Wronskian spinor T-function, plus the rank-2 expansion.
/// Proven for `r = 2`, expected beyond.
pub fn check_spinor(f: &BrFamily) -> Vec<Report> {
    let r = f.r();
    let tag = if r == 2 { Tag::Proven } else { Tag::Expected };
    let o = f.order();
    let variants = [SpinorVariant::Direct, SpinorVariant::Flipped];
    let mut reps = crate::exec::map(&variants, |&v| {
        let params = Params::new().with("r", r).with("variant", v.name());
        Report::from_residual("br/spinor-sum", params, tag, o, || {
            Ok(t_spinor_sum(f, v)?.residual(&t_br(f, r as i64, 1)?))
        })
    });
    if r == 2 {
        reps.push(Report::from_residual("br/spinor-rank2", Params::new().with("r", r), Tag::Proven, o, || {
            tspf2_residual(f)
        }));
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

    #[test]
    fn rho_values() {
        assert_eq!(rho(&[1, 1]), vec![0, 3]);
        assert_eq!(rho(&[1, -1]), vec![2, 1]);
        assert_eq!(rho(&[-1, 1, -1]), vec![-2, 0, -1]);
        assert_eq!(sign_vectors(3).len(), 8);
    }

    #[test]
    fn ones_family_gives_binomial_product() {
        for r in 2..=4 {
            let w: Vec<_> = (0..r).map(|i| rat(2 + i as i64, 1 + (i % 2) as i64)).collect();
            let f = BrFamily::ones(r, w, ShiftBase::default(), 2).unwrap();
            for v in [SpinorVariant::Direct, SpinorVariant::Flipped] {
                let s = t_spinor_sum(&f, v).unwrap().to_series().unwrap();
                assert_eq!(s.constant_term(), f.spin_factor());
            }
        }
    }

    #[test]
    fn seeded_rank2_sum() {
        let f = random_seeded(&mut ChaCha8Rng::seed_from_u64(4), 2, &ShiftBase::default(), 5).unwrap();
        let bad: Vec<String> = check_spinor(&f).iter().filter(|x| !x.passed()).map(|x| x.to_string()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        let g = f.perturbed(Subset::single(1), 1, &rat(1, 1));
        assert!(!tspf2_residual(&g).unwrap().is_zero());
    }
}

