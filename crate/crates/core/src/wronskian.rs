//! Wronskian-type determinant expressions of T-functions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{det_series, rat_pow, Frac, HalfInt, Rat, Series};
use crate::qfamily::{QFamily, Subset, ZParams};
use crate::report::{Params, Report, Tag};
use crate::young::{in_hook, index_mn, Partition};

/// Row and column labels of the block determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSpec {
    pub b: Subset,
    pub r: Vec<i64>,
    pub f: Subset,
    pub s: Vec<i64>,
    pub xi: HalfInt,
}

/// `⟨lo, hi⟩`: the integers from `lo` to `hi`, empty when `hi < lo`.
pub fn interval(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

/// The block determinant with rows `B ⊔ R` and columns `F ⊔ S`.
pub fn delta(fam: &QFamily, spec: &DeltaSpec) -> Result<Frac> {
    let order = fam.order();
    let bs = spec.b.to_vec();
    let fs = spec.f.to_vec();
    if bs.len() + spec.r.len() != fs.len() + spec.s.len() {
        return Err(Error::BadSpec(format!(
            "|B|+|R| = {} but |F|+|S| = {}",
            bs.len() + spec.r.len(),
            fs.len() + spec.s.len()
        )));
    }
    let g = fam.grading();
    if !spec.b.is_subset_of(g.bosonic()) || !spec.f.is_subset_of(g.fermionic()) {
        return Err(Error::BadSpec(format!("B = {} or F = {} has the wrong parity", spec.b, spec.f)));
    }
    let base = fam.base();
    let xi = spec.xi;
    let mut rows = Vec::with_capacity(bs.len() + spec.r.len());
    for &b in &bs {
        let zb = fam.zv(b);
        let mut row = Vec::with_capacity(fs.len() + spec.s.len());
        for &f in &fs {
            let c = (zb - fam.zv(f)).recip();
            row.push(fam.qs(Subset::single(b).with(f), xi).scale(&c));
        }
        for &j in &spec.s {
            let c = rat_pow(zb, j - 1);
            row.push(fam.q(Subset::single(b)).shift(xi + HalfInt::int(2 * j - 1), base).scale(&c));
        }
        rows.push(row);
    }
    for &i in &spec.r {
        let mut row = Vec::with_capacity(fs.len() + spec.s.len());
        for &f in &fs {
            let c = rat_pow(&-fam.zv(f), i - 1);
            row.push(fam.q(Subset::single(f)).shift(xi - HalfInt::int(2 * i - 1), base).scale(&c));
        }
        row.extend(spec.s.iter().map(|_| Series::zero(order)));
        rows.push(row);
    }
    Ok(Frac::from_series(det_series(order, rows)))
}

/// The supercharacter denominator `D(B|F)`.
pub fn denom_d(z: &ZParams, b: Subset, f: Subset) -> Result<Rat> {
    let bs = b.to_vec();
    let fs = f.to_vec();
    let mut num = Rat::one();
    for (x, &b1) in bs.iter().enumerate() {
        for &b2 in &bs[x + 1..] {
            num *= z.z(b1) - z.z(b2);
        }
    }
    for (x, &f1) in fs.iter().enumerate() {
        for &f2 in &fs[x + 1..] {
            num *= z.z(f2) - z.z(f1);
        }
    }
    let mut den = Rat::one();
    for &b1 in &bs {
        for &f1 in &fs {
            den *= z.z(b1) - z.z(f1);
        }
    }
    if num.is_zero() || den.is_zero() {
        return Err(Error::DegenerateParameters(format!("D({b}|{f}) has coincident parameters")));
    }
    Ok(num / den)
}

/// `ε_{I;J} = (−1)^{#{(i,j) ∈ I×J : i > j}}`
pub fn epsilon(i: Subset, j: Subset) -> i64 {
    let inversions: usize = i.iter().map(|a| j.iter().filter(|&b| a > b).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn q_empty(fam: &QFamily, shift: i64) -> Frac {
    Frac::from_series(fam.qs(Subset::EMPTY, shift))
}

/// `(m−n)(m+n−1)/2`
fn base_sign_exp(m: i64, n: i64) -> i64 {
    (m - n) * (m + n - 1) / 2
}

/// The row labels `r_k` and column labels `s_l` attached to a diagram.
fn row_col_labels(mu: &Partition, m: i64, n: i64, xi: i64) -> (Vec<i64>, Vec<i64>) {
    let conj = mu.conjugate();
    let r = (1..=n - m + xi - 1)
        .map(|k| conj.part((n - m + xi - k) as usize) as i64 + k - xi + 1)
        .collect();
    let s = (1..=xi - 1)
        .map(|l| mu.part((xi - l) as usize) as i64 + m - n - xi + l + 1)
        .collect();
    (r, s)
}

/// The normalization `Ψ^{(m,n)}_μ` built from shifted `Q_∅`.
pub fn psi_mu(fam: &QFamily, mu: &Partition, m: usize, n: usize) -> Result<Frac> {
    let (mi, ni) = (m as i64, n as i64);
    let xi = index_mn(mu, m, n) as i64;
    let e = -mi + ni - mu.width() as i64 + mu.conjugate().width() as i64;
    let (r, s) = row_col_labels(mu, mi, ni, xi);
    let mut num = q_empty(fam, -e).mul_ref(&q_empty(fam, e));
    num = num.mul_ref(&q_empty(fam, e).pow(xi - mi - 1)?);
    let mut den = Frac::one(fam.order());
    for ri in r {
        den = den.mul_ref(&q_empty(fam, e - 2 * ri + 2));
    }
    for sj in s {
        den = den.mul_ref(&q_empty(fam, e + 2 * sj - 2));
    }
    num.div_ref(&den)
}

/// `Ψ^{(m,n)}_{a,s}`, extended to the boundary rows `a = 0` and `s = 0`.
pub fn psi_rect(fam: &QFamily, a: i64, s: i64, m: usize, n: usize) -> Result<Frac> {
    let d = m as i64 - n as i64;
    let base = fam.base();
    if a >= 1 && s >= 1 {
        psi_mu(fam, &Partition::rectangle(a as usize, s as usize), m, n)
    } else if a >= 0 && s == 0 {
        let psi = psi_mu(fam, &Partition::empty(), m, n)?.shift(HalfInt::int(a), base);
        Ok(q_empty(fam, d - a).div_ref(&q_empty(fam, d + a))?.mul_ref(&psi))
    } else if a == 0 {
        let psi = psi_mu(fam, &Partition::empty(), m, n)?.shift(HalfInt::int(-s), base);
        Ok(q_empty(fam, d + s).div_ref(&q_empty(fam, d - s))?.mul_ref(&psi))
    } else {
        Ok(Frac::one(fam.order()))
    }
}

fn check_split(fam: &QFamily, b: Subset, f: Subset) -> Result<(usize, usize)> {
    let g = fam.grading();
    if !b.is_subset_of(g.bosonic()) || !f.is_subset_of(g.fermionic()) {
        return Err(Error::BadIndexSet(format!("B = {b}, F = {f} do not match the grading")));
    }
    Ok((b.len(), f.len()))
}

/// `sign · Ψ · Δ / D(B|F)` for the given labels.
fn assemble(
    fam: &QFamily,
    sign_exp: i64,
    psi: Frac,
    spec: DeltaSpec,
) -> Result<Frac> {
    let d = denom_d(fam.z(), spec.b, spec.f)?;
    let c = sign(sign_exp) / d;
    Ok(psi.mul_ref(&delta(fam, &spec)?).scale(&c))
}

/// The T-function `𝖳^{B,F}_μ` as a determinant over basic Q-functions.
pub fn t_wronskian(fam: &QFamily, mu: &Partition, b: Subset, f: Subset) -> Result<Frac> {
    let (m, n) = check_split(fam, b, f)?;
    if !in_hook(mu, m, n) {
        return Ok(Frac::zero(fam.order()));
    }
    let (mi, ni) = (m as i64, n as i64);
    let (sign_exp, r, s) = wronskian_layout(mu, m, n);
    let shift = -mi + ni + mu.conjugate().width() as i64 - mu.width() as i64;
    let spec = DeltaSpec { b, r, f, s, xi: HalfInt::int(shift) };
    assemble(fam, sign_exp, psi_mu(fam, mu, m, n)?, spec)
}

/// Sign exponent, extra row labels and extra column labels of the determinant for `μ` in the `(m|n)` hook.
pub(crate) fn wronskian_layout(mu: &Partition, m: usize, n: usize) -> (i64, Vec<i64>, Vec<i64>) {
    let (mi, ni) = (m as i64, n as i64);
    let xi = index_mn(mu, m, n) as i64;
    let (r, s) = row_col_labels(mu, mi, ni, xi);
    ((mi + ni + 1) * (xi + 1) + base_sign_exp(mi, ni), r, s)
}

/// `𝖳^{B,F}_∅`, which equals `Q_{B,F} Q_∅^{[m−n]}` on a QQ-satisfying family.
pub fn t_empty(fam: &QFamily, b: Subset, f: Subset) -> Result<Frac> {
    t_wronskian(fam, &Partition::empty(), b, f)
}

/// Rectangular T-function `𝖳^{B,F}_{a,s}` by the explicit regime formulas.
pub fn t_rect(fam: &QFamily, a: i64, s: i64, b: Subset, f: Subset) -> Result<Frac> {
    let (m, n) = check_split(fam, b, f)?;
    let d = m as i64 - n as i64;
    let order = fam.order();
    let base = fam.base();
    if a == 0 || (s == 0 && a > 0) {
        let t0 = t_empty(fam, b, f)?;
        let (k, l) = if a == 0 { (s, -s) } else { (-a, a) };
        // a = 0: Q_∅^{[d+s]} / Q_∅^{[d−s]} T_∅^{[−s]};  s = 0: Q_∅^{[d−a]} / Q_∅^{[d+a]} T_∅^{[a]}
        let ratio = q_empty(fam, d + k).div_ref(&q_empty(fam, d - k))?;
        return Ok(ratio.mul_ref(&t0.shift(HalfInt::int(l), base)));
    }
    if a < 0 || s < 0 {
        return Ok(Frac::zero(order));
    }
    let base_exp = base_sign_exp(m as i64, n as i64);
    let xi = HalfInt::int(-d + a - s);
    let psi = psi_rect(fam, a, s, m, n)?;
    let (sign_exp, r, cols) = if a <= d {
        let mut cols = interval(1, d - a);
        cols.extend(interval(d - a + s + 1, d + s));
        (base_exp, vec![], cols)
    } else if a - s <= d {
        ((m as i64 + n as i64 + 1) * a + base_exp, interval(1, -d + a), interval(d - a + s + 1, d + s))
    } else if -s <= d {
        ((m as i64 + n as i64 + 1) * s + base_exp, interval(-d - s + a + 1, -d + a), interval(1, d + s))
    } else {
        let mut rows = interval(1, -d - s);
        rows.extend(interval(-d - s + a + 1, -d + a));
        (base_exp, rows, vec![])
    };
    assemble(fam, sign_exp, psi, DeltaSpec { b, r, f, s: cols, xi })
}

/// Which subset-splitting expansion of a rectangular T-function to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplaceVariant {
    /// Split `F`; valid for `a ≥ s + m − n`.
    Fermionic,
    /// Split `B`; valid for `a ≤ s + m − n`.
    Bosonic,
}

/// `𝖳^{B,F}_{a,s}` as a sum over splittings of `F` or of `B`.
pub fn t_laplace_sum(
    fam: &QFamily,
    a: i64,
    s: i64,
    b: Subset,
    f: Subset,
    variant: LaplaceVariant,
) -> Result<Frac> {
    let (m, n) = check_split(fam, b, f)?;
    let d = m as i64 - n as i64;
    let order = fam.order();
    let z = |x: usize| fam.zv(x).clone();
    let mut acc = Series::zero(order);
    match variant {
        LaplaceVariant::Fermionic => {
            if a < s + d {
                return Err(Error::WrongVariant(format!("fermionic split needs a ≥ s+m−n, got a={a} s={s}")));
            }
            let k = n as i64 - s;
            if k < 0 {
                return Ok(Frac::zero(order));
            }
            for i in f.subsets_of_size(k as usize) {
                let j = f.minus(i);
                let mut c = Rat::one();
                for y in j.iter() {
                    c *= rat_pow(&-z(y), a - s - d);
                    for x in b.iter() {
                        c *= z(x) - z(y);
                    }
                    for x in i.iter() {
                        c /= z(x) - z(y);
                    }
                }
                let term = fam.qs(b.union(i), a).mul_ref(&fam.qs(j, -a + d));
                acc = acc.add_ref(&term.scale(&c));
            }
        }
        LaplaceVariant::Bosonic => {
            if a > s + d {
                return Err(Error::WrongVariant(format!("bosonic split needs a ≤ s+m−n, got a={a} s={s}")));
            }
            if a < 0 || a as usize > m {
                return Ok(Frac::zero(order));
            }
            for i in b.subsets_of_size(a as usize) {
                let j = b.minus(i);
                let mut c = Rat::one();
                for x in i.iter() {
                    c *= rat_pow(&z(x), s - a + d);
                    for y in f.iter() {
                        c *= z(x) - z(y);
                    }
                    for y in j.iter() {
                        c /= z(x) - z(y);
                    }
                }
                let term = fam.qs(i, s + d).mul_ref(&fam.qs(j.union(f), -s));
                acc = acc.add_ref(&term.scale(&c));
            }
        }
    }
    Ok(Frac::from_series(acc))
}

/// Compares the Wronskian T-function with the tableau-sum T-function.
pub fn check_t_equals_f(fam: &QFamily, mu: &Partition, b: Subset, f: Subset) -> Report {
    let tag = if f.is_empty() || b.is_empty() || mu.is_rectangular() {
        Tag::Proven
    } else {
        Tag::Conjecture
    };
    let params = Params::new().with("mu", format!("({mu})")).with("B", b).with("F", f);
    Report::from_residual("wronskian/t=f", params, tag, fam.order(), || {
        let lhs = t_wronskian(fam, mu, b, f)?;
        let tuple = crate::tableaux::IndexTuple::new(fam.grading(), b.iter().chain(f.iter()).collect())?;
        let rhs = crate::tableaux::f_normalized(fam, &tuple, mu)?;
        Ok(lhs.residual(&rhs))
    })
}

/// Integer helper for callers building sign factors.
pub fn sign_rat(e: i64) -> Rat {
    sign(e)
}
