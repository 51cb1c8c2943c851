//! Partitions and skew Young diagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("parts not weakly decreasing: {parts:?}")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The rectangle `(s^a)`; empty when either side is zero.
    pub fn rectangle(a: usize, s: usize) -> Self {
        if s == 0 {
            return Self::empty();
        }
        Partition { parts: vec![s; a] }
    }

    /// The single column `(1^a)`.
    pub fn column(a: usize) -> Self {
        Self::rectangle(a, 1)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part, 1-based; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts, i.e. the first column length.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn width(&self) -> usize {
        self.part(1)
    }

    pub fn is_rectangular(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.width())
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, o: &Partition) -> bool {
        o.len() <= self.len() && o.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// `μ + (1^k)`: add one box to each of the first `k` rows.
    pub fn add_column(&self, k: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.resize(parts.len().max(k), 0);
        for p in parts.iter_mut().take(k) {
            *p += 1;
        }
        Partition { parts }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A skew diagram `λ ⊂ μ`.
///
/// Besides `λ_i ≤ μ_i`, the inner partition may not fill the whole first
/// column or the whole first row of `μ`, so the bounding box of the skew
/// shape is `μ'_1 × μ_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewDiagram {
    lam: Partition,
    mu: Partition,
}

impl SkewDiagram {
    pub fn new(lam: Partition, mu: Partition) -> Result<Self> {
        if !mu.contains(&lam) {
            return Err(Error::InvalidDiagram(format!("{lam} is not inside {mu}")));
        }
        if !lam.is_empty() && (lam.len() >= mu.len() || lam.width() >= mu.width()) {
            return Err(Error::InvalidDiagram(format!(
                "inner shape {lam} touches the last row or column of {mu}"
            )));
        }
        Ok(SkewDiagram { lam, mu })
    }

    pub fn straight(mu: Partition) -> Self {
        SkewDiagram { lam: Partition::empty(), mu }
    }

    pub fn lam(&self) -> &Partition {
        &self.lam
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn size(&self) -> usize {
        self.mu.size() - self.lam.size()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn is_straight(&self) -> bool {
        self.lam.is_empty()
    }

    /// Cells `(row, col)`, 1-based, in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (1..=self.mu.len())
            .flat_map(|i| (self.lam.part(i) + 1..=self.mu.part(i)).map(move |j| (i, j)))
            .collect()
    }

    /// The diagram turned upside down inside its `μ'_1 × μ_1` bounding box.
    pub fn rotate180(&self) -> SkewDiagram {
        if self.mu.is_empty() {
            return self.clone();
        }
        let h = self.mu.len();
        let w = self.mu.width();
        let lam = (1..=h).rev().map(|i| w - self.mu.part(i)).collect();
        let mu = (1..=h).rev().map(|i| w - self.lam.part(i)).collect();
        SkewDiagram {
            lam: Partition::new(lam).expect("rotated inner shape"),
            mu: Partition::new(mu).expect("rotated outer shape"),
        }
    }

    /// All valid skew diagrams with between 1 and `max_cells` cells.
    pub fn all_up_to(max_cells: usize) -> Vec<SkewDiagram> {
        let mut out = Vec::new();
        for outer in 1..=2 * max_cells {
            for mu in Partition::all_of_size(outer) {
                for inner in 0..outer {
                    if outer - inner > max_cells {
                        continue;
                    }
                    for lam in Partition::all_of_size(inner) {
                        if let Ok(d) = SkewDiagram::new(lam, mu.clone()) {
                            out.push(d);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lam.is_empty() {
            write!(f, "({})", self.mu)
        } else {
            write!(f, "({})/({})", self.mu, self.lam)
        }
    }
}

/// The smallest `j ≥ 1` with `μ_j + m − j ≤ n − 1`.
pub fn index_mn(mu: &Partition, m: usize, n: usize) -> usize {
    (1..)
        .find(|&j| mu.part(j) as i64 + m as i64 - (j as i64) < n as i64)
        .expect("parts eventually vanish")
}

/// True when `μ` fits in the `[m, n]`-hook, i.e. `μ_{m+1} ≤ n`.
pub fn in_hook(mu: &Partition, m: usize, n: usize) -> bool {
    mu.part(m + 1) <= n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..7, 0..7).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for a in 1..=6 {
            for s in 1..=6 {
                // transpose the cell set directly
                let cells: BTreeSet<(usize, usize)> =
                    (1..=a).flat_map(|i| (1..=s).map(move |j| (j, i))).collect();
                let rows = (1..=s).map(|i| cells.iter().filter(|c| c.0 == i).count()).collect();
                assert_eq!(Partition::rectangle(a, s).conjugate(), Partition::new(rows).unwrap());
            }
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("3,1").to_string(), "3,1");
        assert_eq!(p("2,2,0").parts(), &[2, 2]);
        assert_eq!(p(""), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    fn rotate_cells(d: &SkewDiagram) -> BTreeSet<(usize, usize)> {
        let h = d.mu().len();
        let w = d.mu().width();
        d.cells().into_iter().map(|(i, j)| (h + 1 - i, w + 1 - j)).collect()
    }

    #[test]
    fn rotation_matches_cell_oracle() {
        let rect = SkewDiagram::straight(Partition::rectangle(3, 2));
        assert_eq!(rect.rotate180(), rect);
        assert_eq!(SkewDiagram::default().rotate180(), SkewDiagram::default());
        for d in SkewDiagram::all_up_to(6) {
            let r = d.rotate180();
            let cells: BTreeSet<_> = r.cells().into_iter().collect();
            assert_eq!(cells, rotate_cells(&d), "{d}");
            assert_eq!(r.rotate180(), d);
            assert_eq!(r.size(), d.size());
            assert!(SkewDiagram::new(r.lam().clone(), r.mu().clone()).is_ok());
        }
        let d = SkewDiagram::straight(p("2,1"));
        assert_eq!(d.rotate180(), SkewDiagram::new(p("1"), p("2,2")).unwrap());
    }

    #[test]
    fn skew_validation() {
        assert!(SkewDiagram::new(p("1"), p("2,1")).is_ok());
        assert!(SkewDiagram::new(p("1,1"), p("2,1")).is_err());
        assert!(SkewDiagram::new(p("2"), p("2,1")).is_err());
        assert!(SkewDiagram::new(p("3"), p("2,1")).is_err());
    }

    #[test]
    fn index_examples() {
        for m in 0..4 {
            assert_eq!(index_mn(&Partition::column(m), m, 0), m + 1);
            assert_eq!(index_mn(&Partition::rectangle(m, 3), m, 0), m + 1);
        }
        for n in 0..4 {
            assert_eq!(index_mn(&Partition::rectangle(5, n), 0, n), 1);
        }
        for r in 2..5 {
            for a in 0..r {
                for s in 1..4 {
                    assert_eq!(index_mn(&Partition::rectangle(a, s), 2 * r, 1), 2 * r);
                }
            }
        }
    }

    #[test]
    fn hook_examples() {
        for m in 0..4 {
            assert!(!in_hook(&Partition::column(m + 1), m, 0));
        }
        assert!(in_hook(&Partition::empty(), 0, 0));
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(mu in arb_partition()) {
            prop_assert_eq!(mu.conjugate().conjugate(), mu);
        }

        #[test]
        fn hook_matches_rectangle_search(mu in arb_partition(), m in 0usize..4, n in 0usize..4) {
            let has_rect = mu.part(m + 1) > n;
            let brute = (1..=mu.len()).any(|i| i > m && mu.part(i) > n);
            prop_assert_eq!(has_rect, brute);
            prop_assert_eq!(in_hook(&mu, m, n), !brute);
        }
    }
}
