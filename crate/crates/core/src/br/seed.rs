use num_traits::{One, Zero};
use rand::Rng;

use super::{br_grading, br_z, star, star_set, BrFamily};
use crate::error::{Error, Result};
use crate::exactring::{solve_linear, HalfInt, Rat, Series, ShiftBase};
use crate::qfamily::{build_family_from_basics, random_unit_series, solve_pair_q, QFamily, Subset, ZParams};
use crate::wronskian::t_empty;

/// How the bosonic Q-functions are determined from the seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Bosonic Wronskians substituted into the spinorial QQ-relation.
    Spinorial,
    /// The full Wronskian family substituted into the folding constraint.
    Folding,
}

/// Size and rank of the linear system solved at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStats {
    pub order: usize,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub consistent: bool,
}

/// Determines unit-constant series order by order so that every residual
/// vanishes. At order `k` the order-`k` coefficients enter the `u^k`
/// coefficient of each residual affinely; the affine map is probed and the
/// resulting system is solved exactly.
pub fn solve_order_by_order<F>(count: usize, order: usize, residuals: F) -> (Vec<Series>, Vec<OrderStats>)
where
    F: Fn(&[Series], usize) -> Result<Vec<Series>> + Sync + Send,
{
    let mut coeffs: Vec<Vec<Rat>> = vec![vec![Rat::one()]; count];
    let mut stats = Vec::new();
    for k in 1..order {
        let probe = |which: Option<usize>| -> Result<Vec<Rat>> {
            let series: Vec<Series> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut c = c.clone();
                    c.push(if which == Some(i) { Rat::one() } else { Rat::zero() });
                    Series::from_coeffs(c, k + 1)
                })
                .collect();
            Ok(residuals(&series, k + 1)?.iter().map(|s| s.coeff(k)).collect())
        };
        let probes: Vec<Option<usize>> = std::iter::once(None).chain((0..count).map(Some)).collect();
        let values = match crate::exec::try_map(&probes, |&p| probe(p)) {
            Ok(v) => v,
            Err(_) => {
                stats.push(OrderStats { order: k, equations: 0, unknowns: count, rank: 0, consistent: false });
                break;
            }
        };
        let base = &values[0];
        let rows = base.len();
        let a: Vec<Vec<Rat>> = (0..rows)
            .map(|e| (0..count).map(|i| &values[i + 1][e] - &base[e]).collect())
            .collect();
        let b: Vec<Rat> = base.iter().map(|x| -x).collect();
        let sol = solve_linear(&a, &b);
        stats.push(OrderStats {
            order: k,
            equations: rows,
            unknowns: count,
            rank: sol.rank,
            consistent: sol.consistent,
        });
        for (c, x) in coeffs.iter_mut().zip(sol.x) {
            c.push(x);
        }
    }
    let series = coeffs
        .into_iter()
        .map(|mut c| {
            c.resize(order.max(1), Rat::zero());
            Series::from_coeffs(c, order)
        })
        .collect();
    (series, stats)
}

fn bosonic_family(r: usize, z: &ZParams, base: &ShiftBase, q_empty: &Series, q_b: &[Series], order: usize) -> QFamily {
    let mut fam = QFamily::ones(br_grading(r), z.clone(), base.clone(), order);
    fam.set(Subset::EMPTY, q_empty.truncate(order));
    for (b, s) in (1..).zip(q_b) {
        fam.set(Subset::single(b), s.truncate(order));
    }
    fam
}

/// `Q_B = 𝖳^{B,∅}_∅ / Q_∅^{[|B|]}` for a bosonic set.
pub fn bosonic_wronskian_q(fam: &QFamily, b: Subset) -> Result<Series> {
    let t = t_empty(fam, b, Subset::EMPTY)?.to_series()?;
    Ok(t.mul_ref(&fam.qs(Subset::EMPTY, b.len() as i64).inv()?))
}

/// Every `(I, b)` with `|I| = r − 1`, `I ∩ I* = ∅` and `b, b* ∉ I`, taking `b ≤ r`
/// or `b*` as the representative of each pair.
pub fn spinorial_instances(r: usize) -> Vec<(Subset, usize)> {
    let bos = Subset::range(1, 2 * r);
    let mut out = Vec::new();
    for set in bos.subsets_of_size(r - 1) {
        if !set.intersect(star_set(r, set)).is_empty() {
            continue;
        }
        for b in bos.iter() {
            if b < star(r, b) && !set.contains(b) && !set.contains(star(r, b)) {
                out.push((set, b));
            }
        }
    }
    out
}

/// LHS − RHS of the spinorial relation with half shifts, given `Q_I`, `Q_{Ib}`, `Q_{Ib*}`.
pub(crate) fn spinorial_residual(
    z: &ZParams,
    base: &ShiftBase,
    b: usize,
    bstar: usize,
    qi: &Series,
    qib: &Series,
    qibs: &Series,
) -> Result<Series> {
    let h = HalfInt::half(0);
    let (sb, ss) = (z.sqrt(b)?, z.sqrt(bstar)?);
    let lhs = qi.shift(h, base).mul_ref(&qi.shift(-h, base)).scale(&(sb - ss));
    let r1 = qib.shift(h, base).mul_ref(&qibs.shift(-h, base)).scale(sb);
    let r2 = qib.shift(-h, base).mul_ref(&qibs.shift(h, base)).scale(ss);
    Ok(lhs.sub_ref(&r1).add_ref(&r2))
}

fn route_spinorial_residuals(
    r: usize,
    z: &ZParams,
    base: &ShiftBase,
    q_empty: &Series,
    q_b: &[Series],
    q_odd: Option<&Series>,
    order: usize,
) -> Result<Vec<Series>> {
    let fam = bosonic_family(r, z, base, q_empty, q_b, order);
    let mut out = Vec::new();
    for (set, b) in spinorial_instances(r) {
        let bs = star(r, b);
        let qi = bosonic_wronskian_q(&fam, set)?;
        let qib = bosonic_wronskian_q(&fam, set.with(b))?;
        let qibs = bosonic_wronskian_q(&fam, set.with(bs))?;
        out.push(spinorial_residual(z, base, b, bs, &qi, &qib, &qibs)?);
    }
    if let Some(q) = q_odd {
        out.push(bosonic_wronskian_q(&fam, Subset::range(1, 2 * r))?.sub_ref(&q.truncate(order)));
    }
    Ok(out)
}

/// The complete Wronskian family from `Q_∅`, the bosonic `Q_b` and `Q_{2r+1}`.
pub fn folded_family(
    r: usize,
    z: &ZParams,
    base: &ShiftBase,
    q_empty: &Series,
    q_b: &[Series],
    q_odd: &Series,
) -> Result<QFamily> {
    let f = 2 * r + 1;
    let q_bf = (1..=2 * r)
        .map(|b| solve_pair_q(q_empty, &q_b[b - 1], q_odd, z.z(b), z.z(f), base).map(|s| vec![s]))
        .collect::<Result<Vec<_>>>()?;
    build_family_from_basics(br_grading(r), z.clone(), base.clone(), q_empty, q_b, std::slice::from_ref(q_odd), &q_bf)
}

/// `Q_B − Q_{𝔅∖B*,𝔉}` for every bosonic `B`.
pub fn folding_residuals(fam: &QFamily, r: usize) -> Vec<Series> {
    let bos = Subset::range(1, 2 * r);
    let fer = Subset::single(2 * r + 1);
    bos.subsets()
        .map(|set| fam.q(set).sub_ref(fam.q(bos.minus(star_set(r, set)).union(fer))))
        .collect()
}

/// Known input series for the order-by-order solve.
#[derive(Clone, Debug)]
pub struct SeedData {
    pub q_empty: Series,
    /// `Q_{2r+1}`; solved for when absent.
    pub q_odd: Option<Series>,
    /// Bosonic `Q_b` held fixed, by index.
    pub fixed: Vec<(usize, Series)>,
}

#[derive(Clone, Debug)]
pub struct RouteSolution {
    /// `Q_1, …, Q_{2r}`
    pub q_b: Vec<Series>,
    pub q_odd: Series,
    pub stats: Vec<OrderStats>,
}

impl RouteSolution {
    /// Total number of unresolved directions over all orders.
    pub fn free(&self) -> usize {
        self.stats.iter().map(|s| s.unknowns - s.rank).sum()
    }

    pub fn consistent(&self) -> bool {
        self.stats.iter().all(|s| s.consistent)
    }
}

/// Solves one route for the bosonic Q-functions that are not held fixed.
/// Free directions are set to zero and reported in the statistics.
pub fn solve_route(r: usize, w: &[Rat], base: &ShiftBase, data: &SeedData, route: Route, order: usize) -> Result<RouteSolution> {
    let z = br_z(r, w)?;
    z.check_generic(base, order)?;
    let nb = 2 * r;
    let mut known: Vec<Option<Series>> = vec![None; nb];
    for (b, s) in &data.fixed {
        if !(1..=nb).contains(b) {
            return Err(Error::BadIndexSet(format!("{b} is not bosonic")));
        }
        known[b - 1] = Some(s.clone());
    }
    let open: Vec<usize> = (0..nb).filter(|&i| known[i].is_none()).collect();
    let assemble = |s: &[Series], o: usize| -> Vec<Series> {
        let mut it = s.iter();
        known
            .iter()
            .map(|k| match k {
                Some(q) => q.truncate(o),
                None => it.next().expect("open unknown").clone(),
            })
            .collect()
    };
    let q_empty = &data.q_empty;
    let solve_odd = route == Route::Folding && data.q_odd.is_none();
    let count = open.len() + usize::from(solve_odd);
    let (mut solved, stats) = solve_order_by_order(count, order, |s, o| {
        let q_b = assemble(&s[..open.len()], o);
        match route {
            Route::Spinorial => route_spinorial_residuals(r, &z, base, q_empty, &q_b, data.q_odd.as_ref(), o),
            Route::Folding => {
                let q_odd = if solve_odd { s[open.len()].clone() } else { data.q_odd.as_ref().unwrap().truncate(o) };
                let fam = folded_family(r, &z, base, &q_empty.truncate(o), &q_b, &q_odd)?;
                Ok(folding_residuals(&fam, r))
            }
        }
    });
    let odd_solved = if solve_odd { solved.pop() } else { None };
    let q_b = assemble(&solved, order);
    let q_odd = match (odd_solved, &data.q_odd) {
        (Some(q), _) => q,
        (None, Some(q)) => q.clone(),
        (None, None) => {
            let fam = bosonic_family(r, &z, base, q_empty, &q_b, order);
            bosonic_wronskian_q(&fam, Subset::range(1, nb))?
        }
    };
    Ok(RouteSolution { q_b, q_odd, stats })
}

/// Seeds of a folded family: `Q_∅`, `Q_{2r+1}` and the gauge seeds `Q_{r+2}, …, Q_{2r}`.
#[derive(Clone, Debug)]
pub struct BrSeed {
    pub q_empty: Series,
    pub q_odd: Series,
    pub gauge: Vec<Series>,
}

impl BrSeed {
    pub fn ones(r: usize, order: usize) -> Self {
        BrSeed { q_empty: Series::one(order), q_odd: Series::one(order), gauge: vec![Series::one(order); r - 1] }
    }

    /// Random unit-constant seeds of the given degree.
    pub fn random<R: Rng>(rng: &mut R, r: usize, degree: usize, order: usize) -> Self {
        let q_empty = random_unit_series(rng, degree, order);
        let q_odd = random_unit_series(rng, degree, order);
        let gauge = (0..r - 1).map(|_| random_unit_series(rng, degree, order)).collect();
        BrSeed { q_empty, q_odd, gauge }
    }

    fn data(&self, r: usize) -> SeedData {
        SeedData {
            q_empty: self.q_empty.clone(),
            q_odd: Some(self.q_odd.clone()),
            fixed: (r + 2..).zip(self.gauge.iter().cloned()).collect(),
        }
    }
}

/// A seeded family with the per-order rank statistics of its solve.
#[derive(Clone, Debug)]
pub struct Seeded {
    pub family: BrFamily,
    pub stats: Vec<OrderStats>,
}

/// Solves for `Q_1, …, Q_{r+1}` order by order along the chosen route, then
/// builds the whole family and checks the folding constraint on every bosonic set.
pub fn seed_br_family(r: usize, w: &[Rat], base: &ShiftBase, seed: &BrSeed, route: Route, order: usize) -> Result<Seeded> {
    if r < 2 {
        return Err(Error::DegenerateParameters(format!("rank r = {r} must be at least 2")));
    }
    if seed.gauge.len() + 1 != r {
        return Err(Error::BadIndexSet(format!("need {} gauge seeds, got {}", r - 1, seed.gauge.len())));
    }
    let units = std::iter::once(&seed.q_empty).chain(std::iter::once(&seed.q_odd)).chain(&seed.gauge);
    if units.into_iter().any(|s| !s.constant_term().is_one()) {
        return Err(Error::DegenerateParameters("seeds must have constant term 1".into()));
    }
    let sol = solve_route(r, w, base, &seed.data(r), route, order)?;
    for st in &sol.stats {
        if !st.consistent {
            return Err(Error::ReductionInconsistent { order: st.order });
        }
        if st.rank < st.unknowns {
            return Err(Error::UnderdeterminedOrder { order: st.order, free: st.unknowns - st.rank });
        }
    }
    let z = br_z(r, w)?;
    let fam = folded_family(r, &z, base, &seed.q_empty.truncate(order), &sol.q_b, &seed.q_odd.truncate(order))?;
    if let Some(k) = folding_residuals(&fam, r).iter().filter_map(Series::first_nonzero).min() {
        return Err(Error::ReductionInconsistent { order: k });
    }
    Ok(Seeded { family: BrFamily::new(r, w.to_vec(), fam)?, stats: sol.stats })
}

/// Default truncation order for seeded families.
pub fn default_order(r: usize) -> usize {
    if r <= 2 {
        6
    } else {
        4
    }
}

/// Random generic roots and degree-2 seeds from a PRNG seed, solved along the folding route.
pub fn random_seeded<R: Rng>(rng: &mut R, r: usize, base: &ShiftBase, order: usize) -> Result<BrFamily> {
    let w = super::random_w(rng, r, base, order);
    let seed = BrSeed::random(rng, r, 2, order);
    Ok(seed_br_family(r, &w, base, &seed, Route::Folding, order)?.family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(r: usize, order: usize, seed: u64) -> (Vec<Rat>, BrSeed) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<Rat> = (0..r).map(|i| rat(3 + 2 * i as i64, 2 + i as i64)).collect();
        (w, BrSeed::random(&mut rng, r, 2, order))
    }

    #[test]
    fn routes_agree_with_gauge_seeds() {
        let base = ShiftBase::default();
        for (r, order) in [(2, 5), (3, 3)] {
            let (w, seed) = sample(r, order, 5);
            let a = seed_br_family(r, &w, &base, &seed, Route::Spinorial, order).unwrap();
            let b = seed_br_family(r, &w, &base, &seed, Route::Folding, order).unwrap();
            for k in 1..=r + 1 {
                let set = Subset::single(k);
                assert_eq!(a.family.family().q(set), b.family.family().q(set), "r={r} b={k}");
            }
            assert!(a.stats.iter().all(|s| s.rank == s.unknowns && s.consistent));
        }
    }

    #[test]
    fn constant_seeds_give_constant_family() {
        let base = ShiftBase::default();
        let w = vec![rat(3, 1), rat(5, 2)];
        let s = seed_br_family(2, &w, &base, &BrSeed::ones(2, 4), Route::Folding, 4).unwrap();
        assert!(s.family.family().table().iter().all(|q| q == &Series::one(4)));
    }

    #[test]
    fn two_seeds_leave_free_directions() {
        let base = ShiftBase::default();
        for r in [2usize, 3] {
            let order = 3;
            let (w, seed) = sample(r, order, 11);
            let data = SeedData { q_empty: seed.q_empty.clone(), q_odd: Some(seed.q_odd.clone()), fixed: vec![] };
            for route in [Route::Spinorial, Route::Folding] {
                let sol = solve_route(r, &w, &base, &data, route, order).unwrap();
                assert!(sol.consistent());
                assert!(sol.stats.iter().all(|s| s.unknowns - s.rank == r - 1), "r={r} {route:?}");
            }
            let open = SeedData { q_odd: None, ..data };
            let sol = solve_route(r, &w, &base, &open, Route::Folding, order).unwrap();
            assert!(sol.stats.iter().all(|s| s.unknowns == 2 * r + 1 && s.rank == r + 1));
        }
    }

    #[test]
    fn missing_gauge_is_rejected() {
        let base = ShiftBase::default();
        let (w, mut seed) = sample(2, 3, 1);
        seed.gauge.clear();
        assert!(matches!(seed_br_family(2, &w, &base, &seed, Route::Folding, 3), Err(Error::BadIndexSet(_))));
        seed.q_empty = Series::constant(rat(2, 1), 3);
        seed.gauge = vec![Series::one(3)];
        assert!(seed_br_family(2, &w, &base, &seed, Route::Folding, 3).is_err());
    }
}
