//! Cone membership and convexity, decided exactly.
//!
//! Single queries run a phase-one simplex over the rationals. Exhaustive
//! enumeration uses [`ConvexityTable`], which lists for every root the
//! minimal linearly independent supports whose open cone contains it.

use num_traits::{One, Signed, Zero};

use super::{RootSet, RootSystem};
use crate::linalg;
use crate::rational::{rat, Rational};

/// A nonnegative rational solution of `Σ c_j columns[j] = target`, if any.
///
/// Phase-one simplex with Bland's rule, so it terminates on degenerate
/// inputs.
pub fn nonnegative_solution(columns: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = columns.len();
    let w = k + n + 1;
    let rhs = w - 1;
    let mut t: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let sign = if target[i] < 0 { -1 } else { 1 };
            let mut row = vec![Rational::zero(); w];
            for j in 0..k {
                row[j] = rat(sign * columns[j][i]);
            }
            row[k + i] = Rational::one();
            row[rhs] = rat(sign * target[i]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + n).collect();
    let mut obj = vec![Rational::zero(); w];
    for j in (0..k).chain([rhs]) {
        obj[j] = -t.iter().map(|row| row[j].clone()).sum::<Rational>();
    }

    while let Some(enter) = (0..k + n).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..n {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero.
        let (r, _) = leave?;
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[r] = enter;
    }

    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            x[b] = t[i][rhs].clone();
        }
    }
    Some(x)
}

/// Whether `target` is a nonnegative combination of the roots in `gens`.
pub fn in_cone(rs: &RootSystem, gens: &RootSet, target: &[i64]) -> bool {
    let cols: Vec<Vec<i64>> = gens.roots(rs).map(|r| r.0.clone()).collect();
    nonnegative_solution(&cols, target).is_some()
}

/// A root outside `t` lying in the nonnegative cone over `t`, if any.
pub fn cone_witness(rs: &RootSystem, t: &RootSet) -> Option<usize> {
    if t.is_empty() {
        return None;
    }
    (0..rs.len()).filter(|&i| !t.contains(i)).find(|&i| in_cone(rs, t, &rs.root(i).0))
}

/// `T` equals `Φ ∩ {Σ c_α α | c_α ≥ 0}`.
pub fn is_convex(rs: &RootSystem, t: &RootSet) -> bool {
    cone_witness(rs, t).is_none()
}

/// Minimal cone supports for every root, as 64-bit masks over root indices.
#[derive(Debug, Clone)]
pub struct ConvexityTable {
    supports: Vec<Vec<u64>>,
}

impl ConvexityTable {
    /// Available for systems with at most 64 roots.
    pub fn new(rs: &RootSystem) -> crate::Result<Self> {
        let m = rs.len();
        if m > 64 {
            return Err(crate::Error::ResourceLimit { what: "roots in a convexity table", limit: 64 });
        }
        let n = rs.rank();
        let supports = (0..m)
            .map(|rho| {
                let others: Vec<usize> = (0..m).filter(|&i| i != rho).collect();
                let mut found = Vec::new();
                let mut chosen = Vec::with_capacity(n);
                collect_supports(rs, rho, &others, 0, &mut chosen, n, &mut found);
                found
            })
            .collect();
        Ok(ConvexityTable { supports })
    }

    pub fn supports(&self, root: usize) -> &[u64] {
        &self.supports[root]
    }

    /// The first root outside `t` that lies in its cone.
    pub fn witness(&self, t: u64) -> Option<usize> {
        (0..self.supports.len())
            .filter(|&rho| t >> rho & 1 == 0)
            .find(|&rho| self.supports[rho].iter().any(|&s| s & !t == 0))
    }

    pub fn is_convex(&self, t: u64) -> bool {
        self.witness(t).is_none()
    }

    /// `Φ ∩ cone(g)`.
    pub fn hull(&self, g: u64) -> u64 {
        (0..self.supports.len())
            .filter(|&rho| g >> rho & 1 == 1 || self.supports[rho].iter().any(|&s| s & !g == 0))
            .fold(0, |m, rho| m | 1 << rho)
    }
}

fn collect_supports(
    rs: &RootSystem,
    rho: usize,
    others: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    max: usize,
    out: &mut Vec<u64>,
) {
    if !chosen.is_empty() && strictly_positive_combination(rs, chosen, rho) {
        out.push(chosen.iter().fold(0u64, |m, &i| m | 1 << i));
        // Supersets are not minimal.
        return;
    }
    if chosen.len() == max {
        return;
    }
    for idx in from..others.len() {
        chosen.push(others[idx]);
        if independent(rs, chosen) {
            collect_supports(rs, rho, others, idx + 1, chosen, max, out);
        }
        chosen.pop();
    }
}

fn independent(rs: &RootSystem, set: &[usize]) -> bool {
    let m: Vec<Vec<i64>> = set.iter().map(|&i| rs.root(i).0.clone()).collect();
    linalg::rank(&linalg::from_ints(&m), rs.rank()) == set.len()
}

fn strictly_positive_combination(rs: &RootSystem, set: &[usize], rho: usize) -> bool {
    let n = rs.rank();
    let a: linalg::Matrix =
        (0..n).map(|i| set.iter().map(|&s| rat(rs.root(s).0[i])).collect()).collect();
    let b: Vec<Rational> = rs.root(rho).0.iter().map(|&x| rat(x)).collect();
    match linalg::solve(&a, &b) {
        Some(c) => c.iter().all(|x| x.is_positive()),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn simplex_basics() {
        let cols = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(nonnegative_solution(&cols, &[2, 3]), Some(vec![rat(2), rat(3)]));
        assert!(nonnegative_solution(&cols, &[-1, 3]).is_none());
        // Redundant, degenerate generators.
        let cols = vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 2], vec![-1, 1]];
        assert!(nonnegative_solution(&cols, &[0, 1]).is_some());
        assert!(nonnegative_solution(&cols, &[0, 0]).is_some());
        assert!(nonnegative_solution(&cols, &[0, -1]).is_none());
        assert!(nonnegative_solution(&[], &[0, 0]).is_some());
        assert!(nonnegative_solution(&[], &[1, 0]).is_none());
    }

    #[test]
    fn a2_convexity_examples() {
        let rs = sys("A2");
        assert!(is_convex(&rs, &RootSet::positive(&rs)));
        assert!(is_convex(&rs, &RootSet::full(&rs)));
        assert!(is_convex(&rs, &RootSet::empty(&rs)));
        let t = RootSet::from_coords(&rs, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!is_convex(&rs, &t));
        assert_eq!(rs.root(cone_witness(&rs, &t).unwrap()).0, vec![1, 1]);
    }

    #[test]
    fn table_agrees_with_simplex_on_every_subset() {
        for name in ["A1", "A2", "B2", "G2"] {
            let rs = sys(name);
            let table = ConvexityTable::new(&rs).unwrap();
            for mask in 0u64..(1 << rs.len()) {
                let t = RootSet::from_mask(&rs, mask);
                assert_eq!(table.is_convex(mask), is_convex(&rs, &t), "{name} {mask:b}");
            }
        }
    }

    #[test]
    fn hull_is_convex_and_contains_generators() {
        let rs = sys("B3");
        let table = ConvexityTable::new(&rs).unwrap();
        for g in [0b1u64, 0b101, 0b1_0000_0011, 0b11 << 9, 0x3_0001] {
            let h = table.hull(g);
            assert_eq!(h & g, g);
            assert!(table.is_convex(h));
            assert!(is_convex(&rs, &RootSet::from_mask(&rs, h)));
        }
    }
}
