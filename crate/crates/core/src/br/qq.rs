use num_traits::One;

use super::seed::spinorial_residual;
use super::{star, star_set, BrFamily};
use crate::error::{Error, Result};
use crate::exactring::{Rat, Series};
use crate::qfamily::Subset;
use crate::report::{Params, Report, Tag};

/// Which folded QQ-relation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrRelation {
    /// Half-shifted spinorial relation.
    Spinorial,
    /// The spinorial relation shifted by one half and multiplied through by `z_b^{1/2}`.
    SpinorialInteger,
    /// Bosonic relation for the pair `(b, b*)`.
    Bosonic,
    /// Fermionic relation with the partner `b*` added.
    FermionicPartner,
    /// Fermionic relation with `b` added.
    FermionicSelf,
}

impl BrRelation {
    pub const ALL: [BrRelation; 5] = [
        BrRelation::Spinorial,
        BrRelation::SpinorialInteger,
        BrRelation::Bosonic,
        BrRelation::FermionicPartner,
        BrRelation::FermionicSelf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BrRelation::Spinorial => "br/qq-sp",
            BrRelation::SpinorialInteger => "br/qq-sp2",
            BrRelation::Bosonic => "br/qq-b2",
            BrRelation::FermionicPartner => "br/qq-f2",
            BrRelation::FermionicSelf => "br/qq-f3",
        }
    }
}

/// Checks `I ⊆ 𝔅`, `|I| = r − 1`, `I ∩ I* = ∅` and `b, b* ∉ I`.
pub fn check_spinorial_pair(r: usize, set: Subset, b: usize) -> Result<()> {
    let bos = Subset::range(1, 2 * r);
    let ok = set.is_subset_of(bos)
        && set.len() + 1 == r
        && set.intersect(star_set(r, set)).is_empty()
        && (1..=2 * r).contains(&b)
        && !set.contains(b)
        && !set.contains(star(r, b));
    if ok {
        Ok(())
    } else {
        Err(Error::BadIndexSet(format!("I = {set}, b = {b} is not a spinorial pair for r = {r}")))
    }
}

/// Every admissible `(I, b)`, both members of each pair `{b, b*}` included.
pub fn spinorial_pairs(r: usize) -> Vec<(Subset, usize)> {
    let bos = Subset::range(1, 2 * r);
    bos.subsets_of_size(r - 1)
        .flat_map(|set| bos.iter().map(move |b| (set, b)))
        .filter(|&(set, b)| check_spinorial_pair(r, set, b).is_ok())
        .collect()
}

/// `(z_b^{1/2} − z_{b*}^{1/2}) Q_I^{[1/2]} Q_I^{[−1/2]} − z_b^{1/2} Q_{Ib}^{[1/2]} Q_{Ib*}^{[−1/2]} + z_{b*}^{1/2} Q_{Ib}^{[−1/2]} Q_{Ib*}^{[1/2]}`
pub fn qq_sp_residual(f: &BrFamily, set: Subset, b: usize) -> Result<Series> {
    qq_br_residual(f, BrRelation::Spinorial, set, b)
}

/// LHS − RHS of one folded QQ-relation at `(I, b)`.
pub fn qq_br_residual(f: &BrFamily, rel: BrRelation, set: Subset, b: usize) -> Result<Series> {
    let r = f.r();
    check_spinorial_pair(r, set, b)?;
    let bs = star(r, b);
    let fam = f.family();
    let base = f.base();
    let q = |s: Subset, a: i64| fam.qs(s, a);
    let (qi, qib, qibs, qall) = (set, set.with(b), set.with(bs), set.with(b).with(bs));
    let zb = f.z(b).clone();
    let zinv = zb.recip();
    let one = Rat::one();
    let res = match rel {
        BrRelation::Spinorial => spinorial_residual(fam.z(), base, b, bs, fam.q(qi), fam.q(qib), fam.q(qibs))?,
        BrRelation::SpinorialInteger => {
            let lhs = q(qi, 1).mul_ref(fam.q(qi)).scale(&(&zb - &one));
            let r1 = q(qib, 1).mul_ref(fam.q(qibs)).scale(&zb);
            let r2 = fam.q(qib).mul_ref(&q(qibs, 1));
            lhs.sub_ref(&r1).add_ref(&r2)
        }
        BrRelation::Bosonic => {
            let lhs = fam.q(qi).mul_ref(fam.q(qall)).scale(&(&zb - &zinv));
            let r1 = q(qib, 1).mul_ref(&q(qibs, -1)).scale(&zb);
            let r2 = q(qib, -1).mul_ref(&q(qibs, 1)).scale(&zinv);
            lhs.sub_ref(&r1).add_ref(&r2)
        }
        BrRelation::FermionicPartner => {
            let lhs = fam.q(qibs).mul_ref(fam.q(qall)).scale(&(&zinv + &one));
            let r1 = q(qi, -1).mul_ref(&q(qibs, 1)).scale(&zinv);
            let r2 = q(qi, 1).mul_ref(&q(qibs, -1));
            lhs.sub_ref(&r1).sub_ref(&r2)
        }
        BrRelation::FermionicSelf => {
            let lhs = fam.q(qib).mul_ref(fam.q(qall)).scale(&(&zb + &one));
            let r1 = q(qi, -1).mul_ref(&q(qib, 1)).scale(&zb);
            let r2 = q(qi, 1).mul_ref(&q(qib, -1));
            lhs.sub_ref(&r1).sub_ref(&r2)
        }
    };
    Ok(res)
}

/// Every folded QQ-relation at every admissible `(I, b)`.
pub fn check_qq_br(f: &BrFamily) -> Vec<Report> {
    let jobs: Vec<(BrRelation, Subset, usize)> = BrRelation::ALL
        .iter()
        .flat_map(|&rel| spinorial_pairs(f.r()).into_iter().map(move |(set, b)| (rel, set, b)))
        .collect();
    crate::exec::map(&jobs, |&(rel, set, b)| {
        let params = Params::new().with("r", f.r()).with("I", set).with("b", b);
        Report::from_residual(rel.name(), params, Tag::Proven, f.order(), || qq_br_residual(f, rel, set, b))
    })
}
