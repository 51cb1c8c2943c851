use num_traits::Zero;

use super::{Frac, Series};

/// Row-major square matrix of fractions.
pub type FracMatrix = Vec<Vec<Frac>>;

/// Determinant of a square matrix over the fraction field.
///
/// Denominators are cleared row by row, the numerator determinant is taken
/// over the truncated series ring, and the row denominators are divided back
/// out. The empty matrix has determinant 1.
pub fn det(order: usize, m: &[Vec<Frac>]) -> Frac {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "det of a non-square matrix");
    if n == 0 {
        return Frac::one(order);
    }
    let mut den = Series::one(order);
    let mut rows = Vec::with_capacity(n);
    for row in m {
        if row.iter().all(Frac::is_series) {
            rows.push(row.iter().map(|x| x.num().truncate(order)).collect());
            continue;
        }
        let row_den = row
            .iter()
            .fold(Series::one(order), |acc, x| acc.mul_ref(x.den()));
        let cleared = (0..n)
            .map(|j| {
                row.iter().enumerate().fold(row[j].num().truncate(order), |acc, (k, x)| {
                    if k == j {
                        acc
                    } else {
                        acc.mul_ref(x.den())
                    }
                })
            })
            .collect();
        den = den.mul_ref(&row_den);
        rows.push(cleared);
    }
    Frac::new(det_series(order, rows), den)
}

/// Determinant over the truncated series ring.
///
/// Gaussian elimination is used while unit pivots (nonzero constant term)
/// exist; otherwise the division-free Berkowitz algorithm takes over. Both are
/// exact modulo `u^order`.
pub fn det_series(order: usize, m: Vec<Vec<Series>>) -> Series {
    let n = m.len();
    if n == 0 {
        return Series::one(order);
    }
    match det_unit_pivot(order, m.clone()) {
        Some(d) => d,
        None => det_berkowitz(order, &m),
    }
}

fn det_unit_pivot(order: usize, mut a: Vec<Vec<Series>>) -> Option<Series> {
    let n = a.len();
    let mut acc = Series::one(order);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].constant_term().is_zero())?;
        if p != c {
            a.swap(p, c);
            acc = acc.neg_ref();
        }
        let pinv = a[c][c].inv().ok()?;
        acc = acc.mul_ref(&a[c][c]);
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].mul_ref(&pinv);
            for j in c + 1..n {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub_ref(&factor.mul_ref(&pivot_row[j]));
                }
            }
        }
    }
    Some(acc)
}

/// Berkowitz: characteristic polynomial of the leading principal submatrices
/// via Toeplitz products; `det A = (-1)^n p_n(0)`.
fn det_berkowitz(order: usize, a: &[Vec<Series>]) -> Series {
    let n = a.len();
    // coefficients of p_k, highest degree first
    let mut poly = vec![Series::one(order), a[0][0].neg_ref()];
    for k in 1..n {
        // A_k = [[A_{k-1}, c], [r, a_kk]] with A_{k-1} the leading k x k block
        let col: Vec<Series> = (0..k).map(|i| a[i][k].clone()).collect();
        let row: Vec<Series> = (0..k).map(|j| a[k][j].clone()).collect();
        // first column of the Toeplitz matrix: 1, -a_kk, -r c, -r A c, ...
        let mut toeplitz = vec![Series::one(order), a[k][k].neg_ref()];
        let mut v = col;
        for _ in 0..k {
            let rv = dot(order, &row, &v);
            toeplitz.push(rv.neg_ref());
            v = (0..k)
                .map(|i| dot(order, &a[i][..k], &v))
                .collect();
        }
        let mut next = vec![Series::zero(order); k + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *out = out.add_ref(&toeplitz[i - j].mul_ref(p));
                }
            }
        }
        poly = next;
    }
    let last = poly.pop().expect("nonempty");
    if n % 2 == 1 {
        last.neg_ref()
    } else {
        last
    }
}

fn dot(order: usize, a: &[Series], b: &[Series]) -> Series {
    a.iter()
        .zip(b)
        .fold(Series::zero(order), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, rat_int, Rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const O: usize = 5;

    /// Cofactor expansion along the first row; the independent oracle.
    fn cofactor(m: &[Vec<Frac>]) -> Frac {
        let n = m.len();
        if n == 0 {
            return Frac::one(O);
        }
        let mut acc = Frac::zero(O);
        for j in 0..n {
            let minor: Vec<Vec<Frac>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul_ref(&cofactor(&minor));
            acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        acc
    }

    fn random_series(rng: &mut ChaCha8Rng, zero_const: bool) -> Series {
        let cs: Vec<Rat> = (0..O)
            .map(|k| {
                if k == 0 && zero_const {
                    Rat::zero()
                } else {
                    rat(rng.random_range(-9..=9), rng.random_range(1..=3))
                }
            })
            .collect();
        Series::from_coeffs(cs, O)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, sparse_const: bool) -> FracMatrix {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let z = sparse_const && rng.random_bool(0.6);
                        let num = random_series(rng, z);
                        let mut den = random_series(rng, false);
                        if rng.random_bool(0.3) {
                            // keep some unreduced fractions with u | den
                            den = den.mul_ref(&Series::monomial(rat_int(1), 1, O)).add_ref(&Series::monomial(rat_int(1), 1, O));
                        }
                        Frac::new(num, den)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_and_equal_columns() {
        let id: FracMatrix = (0..3)
            .map(|i| (0..3).map(|j| Frac::constant(rat_int((i == j) as i64), O)).collect())
            .collect();
        assert!(det(O, &id).frac_equal(&Frac::one(O)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut m = random_matrix(&mut rng, 4, false);
        for row in m.iter_mut() {
            row[2] = row[0].clone();
        }
        assert!(det(O, &m).is_zero());
        assert!(det(O, &[]).frac_equal(&Frac::one(O)));
    }

    #[test]
    fn random_matrices_match_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for sparse in [false, true] {
                let m = random_matrix(&mut rng, n, sparse);
                assert!(det(O, &m).frac_equal(&cofactor(&m)), "n={n} sparse={sparse}");
            }
        }
    }

    #[test]
    fn berkowitz_agrees_with_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5 {
            let m: Vec<Vec<Series>> = (0..n)
                .map(|_| (0..n).map(|_| random_series(&mut rng, false)).collect())
                .collect();
            let a = det_unit_pivot(O, m.clone()).unwrap();
            assert_eq!(a, det_berkowitz(O, &m));
        }
    }

    #[test]
    fn row_swap_flips_sign_and_multilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&mut rng, 4, true);
        let d = det(O, &m);
        let mut swapped = m.clone();
        swapped.swap(1, 3);
        assert!(det(O, &swapped).frac_equal(&d.neg_ref()));
        // linear in row 2
        let extra: Vec<Frac> = random_matrix(&mut rng, 4, false).remove(0);
        let mut m1 = m.clone();
        m1[2] = extra.clone();
        let mut msum = m.clone();
        msum[2] = m[2].iter().zip(&extra).map(|(a, b)| a.add_ref(b)).collect();
        assert!(det(O, &msum).frac_equal(&d.add_ref(&det(O, &m1))));
    }
}
