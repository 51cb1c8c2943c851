use num_traits::{One, Zero};

use super::Rat;

/// Outcome of exact Gaussian elimination on `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    pub unknowns: usize,
    pub consistent: bool,
    /// A particular solution with every free unknown set to zero.
    pub x: Vec<Rat>,
}

impl LinearSolution {
    pub fn free(&self) -> usize {
        self.unknowns - self.rank
    }

    pub fn is_unique(&self) -> bool {
        self.consistent && self.free() == 0
    }
}

/// Solves `A x = b` over the rationals by reduced row echelon form.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> LinearSolution {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, line) in m.iter_mut().enumerate() {
            if i != row && !line[col].is_zero() {
                let c = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= p * &c;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let consistent = m[row..].iter().all(|r| r[cols].is_zero());
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    LinearSolution { rank: pivots.len(), unknowns: cols, consistent, x }
}

/// `A x` for a dense rational matrix.
pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

/// The `n × n` identity.
pub fn identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat_int;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let s = solve_linear(&a, &v(&[5, 10]));
        assert!(s.is_unique());
        assert_eq!(s.x, v(&[1, 3]));
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(solve_linear(&a, &v(&[1, 2, 3])).is_unique());
        let bad = solve_linear(&a, &v(&[1, 2, 4]));
        assert!(!bad.consistent);
        assert_eq!(bad.rank, 2);
    }

    #[test]
    fn rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let s = solve_linear(&a, &v(&[1, 2]));
        assert!(s.consistent);
        assert_eq!(s.free(), 2);
        assert_eq!(mat_vec(&a, &s.x), v(&[1, 2]));
    }

    #[test]
    fn identity_solves_to_rhs() {
        let s = solve_linear(&identity(3), &v(&[4, -1, 7]));
        assert_eq!(s.x, v(&[4, -1, 7]));
        let empty = solve_linear(&[], &[]);
        assert!(empty.is_unique());
    }

    proptest! {
        #[test]
        fn particular_solution_satisfies_system(
            entries in proptest::collection::vec(-5i64..=5, 12),
            x in proptest::collection::vec(-5i64..=5, 3),
        ) {
            let a: Vec<Vec<Rat>> = entries.chunks(3).map(|r| r.iter().map(|&e| rat_int(e)).collect()).collect();
            let x = v(&x);
            let b = mat_vec(&a, &x);
            let s = solve_linear(&a, &b);
            prop_assert!(s.consistent);
            prop_assert_eq!(mat_vec(&a, &s.x), b);
        }
    }
}
