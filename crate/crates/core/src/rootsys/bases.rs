use std::collections::{HashSet, VecDeque};

use num_traits::ToPrimitive;

use super::{RootSet, RootSystem};
use crate::error::{Error, Result};
use crate::linalg;

/// Cap on the Weyl-orbit enumeration in [`enumerate_bases`]; E6 just fits.
pub const DEFAULT_MAX_BASES: usize = 60_000;

/// A base `B = w(Δ)` of simple roots.
#[derive(Debug, Clone)]
pub struct Base {
    simples: Vec<usize>,
    /// Integer inverse of the matrix whose columns are the simple roots.
    to_base: Vec<Vec<i64>>,
    positive: RootSet,
}

impl Base {
    /// The reference base `Δ`.
    pub fn reference(rs: &RootSystem) -> Base {
        let n = rs.rank();
        let to_base = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Base { simples: (0..n).collect(), to_base, positive: RootSet::positive(rs) }
    }

    /// Validates that the given roots form a base: a Z-basis of the root
    /// lattice in which every root has coefficients of one sign.
    pub fn from_simples(rs: &RootSystem, simples: Vec<usize>) -> Result<Base> {
        let n = rs.rank();
        if simples.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: simples.len() });
        }
        let cols: Vec<Vec<i64>> = (0..n).map(|i| simples.iter().map(|&s| rs.root(s).0[i]).collect()).collect();
        let inv = linalg::inverse(&linalg::from_ints(&cols))
            .ok_or_else(|| Error::Unsupported("simple roots are linearly dependent".into()))?;
        let mut to_base = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return Err(Error::Unsupported("not a Z-basis of the root lattice".into()));
                }
                to_base[i][j] = inv[i][j].to_integer().to_i64().unwrap_or(i64::MAX);
            }
        }
        let mut positive = RootSet::empty(rs);
        for (i, r) in rs.roots().iter().enumerate() {
            let c = apply(&to_base, &r.0);
            if c.iter().all(|&x| x >= 0) {
                positive.insert(i);
            } else if c.iter().any(|&x| x > 0) {
                return Err(Error::Unsupported(format!("root {r} has mixed signs")));
            }
        }
        Ok(Base { simples, to_base, positive })
    }

    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    /// Coefficients `n_γ^τ` of a lattice vector in this base.
    pub fn coords(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.to_base, v)
    }

    /// Reference coordinates of `Σ c_k B_k`.
    pub fn from_coords(&self, rs: &RootSystem, c: &[i64]) -> Vec<i64> {
        let mut v = vec![0i64; rs.rank()];
        for (k, &s) in self.simples.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&rs.root(s).0) {
                *x += c[k] * y;
            }
        }
        v
    }

    /// `Φ_B^+`.
    pub fn positive(&self) -> &RootSet {
        &self.positive
    }

    /// `Φ_B^-`.
    pub fn negative(&self, rs: &RootSystem) -> RootSet {
        self.positive.complement(rs)
    }

    pub fn position(&self, root: usize) -> Option<usize> {
        self.simples.iter().position(|&s| s == root)
    }

    pub fn as_set(&self, rs: &RootSystem) -> RootSet {
        RootSet::from_indices(rs, self.simples.iter().copied())
    }

    fn key(&self) -> Vec<usize> {
        let mut k = self.simples.clone();
        k.sort_unstable();
        k
    }
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// All bases `w(Δ)`, `w` in the Weyl group, without duplicates. The
/// reference base comes first.
pub fn enumerate_bases(rs: &RootSystem) -> Result<Vec<Base>> {
    enumerate_bases_with_limit(rs, DEFAULT_MAX_BASES)
}

pub fn enumerate_bases_with_limit(rs: &RootSystem, limit: usize) -> Result<Vec<Base>> {
    let start = Base::reference(rs);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.key()]);
    let mut queue = VecDeque::from([start.simples.clone()]);
    let mut out = Vec::new();
    while let Some(simples) = queue.pop_front() {
        for &beta in &simples {
            let reflected: Vec<usize> = simples
                .iter()
                .map(|&s| {
                    let v = rs.reflect(&rs.root(s).0, &rs.root(beta).0);
                    rs.index_of(&v).expect("reflection permutes roots")
                })
                .collect();
            let mut key = reflected.clone();
            key.sort_unstable();
            if seen.insert(key) {
                if seen.len() > limit {
                    return Err(Error::ResourceLimit { what: "Weyl group orbit of bases", limit });
                }
                queue.push_back(reflected);
            }
        }
        out.push(Base::from_simples(rs, simples)?);
    }
    Ok(out)
}
