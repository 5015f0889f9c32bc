//! Dense exact linear algebra over the rationals: row reduction, rank,
//! particular solutions.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn new(mut m: Matrix, ncols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref { rows: m, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    Rref::new(m.clone(), ncols).rank()
}

/// Solves `a x = b`, setting free variables to zero. `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let rref = Rref::new(aug, n + 1);
    if rref.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &c) in rref.rows.iter().zip(&rref.pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let rref = Rref::new(aug, 2 * n);
    if rref.rank() < n || rref.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rref.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let d = &f * &m[c][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

pub fn from_ints(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| crate::rational::rat(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn rank_and_solve() {
        let a = from_ints(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let x = solve(&a, &[rat(6), rat(12), rat(2)]).unwrap();
        let ax: Vec<Rational> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        assert_eq!(ax, vec![rat(6), rat(12), rat(2)]);
        assert!(solve(&a, &[rat(1), rat(0), rat(0)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = from_ints(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]);
        assert!(inverse(&from_ints(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&from_ints(&[vec![2, -1], vec![-1, 2]])), rat(3));
        assert_eq!(determinant(&from_ints(&[vec![0, 1], vec![1, 0]])), rat(-1));
        assert_eq!(determinant(&from_ints(&[vec![1, 2], vec![2, 4]])), rat(0));
    }

    #[test]
    fn reduce_kills_row_space() {
        let rref = Rref::new(from_ints(&[vec![1, 1, 0], vec![0, 1, 1]]), 3);
        let v = rref.reduce(&[rat(1), rat(2), rat(1)]);
        assert_eq!(v, vec![rat(0), rat(0), rat(0)]);
        assert_eq!(rref.free_columns(), vec![2]);
    }
}
