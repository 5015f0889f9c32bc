//! Irreducible root systems of types A–G in simple-root coordinates, with the
//! combinatorics of bases, ideals and convex subsets.

mod bases;
mod cone;
mod gamma;
mod set;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bases::{enumerate_bases, enumerate_bases_with_limit, Base, DEFAULT_MAX_BASES};
pub use cone::{cone_witness, in_cone, is_convex, nonnegative_solution, ConvexityTable};
pub use gamma::{
    chain_to_highest_root, generated_negative_ideal, is_ideal, minus_alpha_ideal,
    verify_gamma_lemma, GammaCounterexample, GammaReport,
};
pub use set::RootSet;

/// Largest rank accepted by [`RootSystem::new`].
pub const MAX_RANK: usize = 12;

/// Guard on closure generation for hand-supplied forms.
const MAX_GENERATED_ROOTS: usize = 4096;

/// A Cartan type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InvalidType { letter, rank });
        }
        Ok(CartanType { letter, rank })
    }

    /// Number of roots of the irreducible system of this type.
    pub fn classical_root_count(&self) -> usize {
        let n = self.rank;
        match self.letter {
            'A' => n * (n + 1),
            'B' | 'C' => 2 * n * n,
            'D' => 2 * n * (n - 1),
            'E' => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            'F' => 48,
            _ => 12,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.letter {
            'A' => fact(n + 1),
            'B' | 'C' => (1u128 << n) * fact(n),
            'D' => (1u128 << (n - 1)) * fact(n),
            'E' => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            'F' => 1152,
            _ => 12,
        }
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots (Bourbaki numbering,
    /// short roots of squared length 2).
    fn simple_form(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut f = vec![vec![0i64; n]; n];
        let link = |f: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            f[i][j] = v;
            f[j][i] = v;
        };
        match self.letter {
            'A' => {
                for i in 0..n {
                    f[i][i] = 2;
                }
                for i in 1..n {
                    link(&mut f, i - 1, i, -1);
                }
            }
            'B' => {
                for i in 0..n {
                    f[i][i] = if i + 1 == n { 2 } else { 4 };
                }
                for i in 1..n {
                    link(&mut f, i - 1, i, -2);
                }
            }
            'C' => {
                for i in 0..n {
                    f[i][i] = if i + 1 == n { 4 } else { 2 };
                }
                for i in 1..n {
                    link(&mut f, i - 1, i, if i + 1 == n { -2 } else { -1 });
                }
            }
            'D' => {
                for i in 0..n {
                    f[i][i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut f, i - 1, i, -1);
                }
                link(&mut f, n - 3, n - 1, -1);
            }
            'E' => {
                for i in 0..n {
                    f[i][i] = 2;
                }
                link(&mut f, 0, 2, -1);
                link(&mut f, 1, 3, -1);
                for i in 3..n {
                    link(&mut f, i - 1, i, -1);
                }
            }
            'F' => {
                f[0][0] = 4;
                f[1][1] = 4;
                f[2][2] = 2;
                f[3][3] = 2;
                link(&mut f, 0, 1, -2);
                link(&mut f, 1, 2, -2);
                link(&mut f, 2, 3, -1);
            }
            _ => {
                f[0][0] = 2;
                f[1][1] = 6;
                link(&mut f, 0, 1, -3);
            }
        }
        f
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::parse("empty Cartan type"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(format!("bad Cartan type `{s}`")))?;
        CartanType::new(letter, rank)
    }
}

/// A root, as integer coefficients in the simple roots of the reference base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An irreducible root system. Immutable after construction.
///
/// Roots are indexed: positive roots come first in order of height, then
/// their negatives in the same order, so `neg(i) = i ± npos`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    form: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    npos: usize,
    sums: Vec<Option<u32>>,
    highest: usize,
}

impl RootSystem {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let t = CartanType::new(letter, rank)?;
        Self::from_form(t, t.simple_form())
    }

    pub fn of_type(t: CartanType) -> Result<Self> {
        Self::from_form(t, t.simple_form())
    }

    /// Builds a system from an arbitrary symmetric Gram matrix of simple
    /// roots. Used for negative controls: the result need not match `t`.
    pub fn from_form(t: CartanType, form: Vec<Vec<i64>>) -> Result<Self> {
        let n = form.len();
        if n == 0 || form.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: form.first().map_or(0, |r| r.len()) });
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            if form[i][i] <= 0 || form[i][i] % 2 != 0 {
                return Err(Error::InvalidAlgebra(format!("simple root {i} has length {}", form[i][i])));
            }
            for j in 0..n {
                if form[i][j] != form[j][i] || (2 * form[i][j]) % form[i][i] != 0 {
                    return Err(Error::InvalidAlgebra("form is not a symmetrized Cartan matrix".into()));
                }
                cartan[i][j] = 2 * form[i][j] / form[i][i];
            }
        }
        let symmetrizer = (0..n).map(|i| form[i][i] / 2).collect();

        let positive = generate_positive(&cartan)?;
        let npos = positive.len();
        let mut roots: Vec<Root> = positive.into_iter().map(Root).collect();
        let negs: Vec<Root> = roots.iter().map(|r| -r).collect();
        roots.extend(negs);
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();

        let total = roots.len();
        let mut sums = vec![None; total * total];
        for a in 0..total {
            for b in 0..total {
                let s: Vec<i64> = roots[a].0.iter().zip(&roots[b].0).map(|(x, y)| x + y).collect();
                sums[a * total + b] = index.get(&s).map(|&k| k as u32);
            }
        }
        let highest = (0..npos).max_by_key(|&i| roots[i].height()).unwrap_or(0);

        Ok(RootSystem { cartan_type: t, form, cartan, symmetrizer, roots, index, npos, sums, highest })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)`; `D·A` is symmetric.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = (α_i, α_i)/2`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn simple_form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn positive_indices(&self) -> std::ops::Range<usize> {
        0..self.npos
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        v.len() == self.rank() && self.index.contains_key(v)
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    /// Index of `roots[a] + roots[b]` if that sum is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * self.roots.len() + b].map(|k| k as usize)
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    pub fn highest_index(&self) -> usize {
        self.highest
    }

    /// The invariant form on integer vectors in simple-root coordinates.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    /// `(a, b)` for roots; short roots have `(a, a) = 2`.
    pub fn inner_product(&self, a: &Root, b: &Root) -> i64 {
        self.form(&a.0, &b.0)
    }

    /// `⟨v, β^∨⟩ = 2(v, β)/(β, β)`.
    pub fn coroot_pairing(&self, v: &[i64], beta: &[i64]) -> i64 {
        2 * self.form(v, beta) / self.form(beta, beta)
    }

    /// Reflection of `v` in the hyperplane orthogonal to `beta`.
    pub fn reflect(&self, v: &[i64], beta: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(v, beta);
        v.iter().zip(beta).map(|(x, b)| x - c * b).collect()
    }

    /// Pairing of a weight given in fundamental-weight coordinates with a
    /// root in simple-root coordinates: `(ω_i, α_j) = δ_ij d_j`.
    pub fn weight_root_pairing(&self, weight: &[i64], root: &[i64]) -> i64 {
        weight
            .iter()
            .zip(root)
            .zip(&self.symmetrizer)
            .map(|((w, c), d)| w * c * d)
            .sum()
    }

    /// A root-lattice vector rewritten in fundamental-weight coordinates.
    pub fn root_to_weight(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * v[j]).sum()).collect()
    }

    /// Checks the stated invariants: root count, symmetry under negation,
    /// positive lengths and `θ` reachable from each simple root.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        let expected = self.cartan_type.classical_root_count();
        if self.len() != expected {
            return Err(format!("{}: {} roots, expected {expected}", self.cartan_type, self.len()));
        }
        for (i, r) in self.roots.iter().enumerate() {
            if self.inner_product(r, r) <= 0 {
                return Err(format!("root {r} has nonpositive length"));
            }
            if self.index_of(&(-r).0) != Some(self.neg(i)) {
                return Err(format!("-({r}) missing"));
            }
        }
        if self.highest_root().0.iter().any(|&c| c < 1) {
            return Err("highest root has a zero coefficient".into());
        }
        Ok(())
    }
}

/// Positive roots by closure from the simple roots using root strings.
fn generate_positive(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut level: Vec<Vec<i64>> = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        all.extend(next.iter().cloned());
        if all.len() > MAX_GENERATED_ROOTS {
            return Err(Error::ResourceLimit { what: "root closure", limit: MAX_GENERATED_ROOTS });
        }
        level = next;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_systems() {
        let a1 = sys("A1");
        assert_eq!(a1.len(), 2);
        let a2 = sys("A2");
        assert_eq!(a2.len(), 6);
        assert_eq!(a2.highest_root().0, vec![1, 1]);
        let g2 = sys("G2");
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.highest_root().0, vec![3, 2]);
        assert_eq!(sys("B2").highest_root().0, vec![1, 2]);
        assert_eq!(sys("F4").highest_root().0, vec![2, 3, 4, 2]);
        assert_eq!(sys("E8").highest_root().0, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn classical_counts_everywhere() {
        for t in ["A1", "A4", "A8", "B2", "B5", "C3", "C6", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let rs = sys(t);
            rs.self_check().unwrap();
        }
    }

    #[test]
    fn invalid_types() {
        for t in ["A0", "B1", "D3", "E5", "E9", "F3", "G3", "H3", "A13"] {
            assert!(t.parse::<CartanType>().is_err(), "{t}");
        }
    }

    #[test]
    fn membership() {
        let a2 = sys("A2");
        assert!(a2.is_root(&[1, 1]));
        assert!(!a2.is_root(&[2, 1]));
        assert!(!a2.is_root(&[0, 0]));
        assert!(!a2.is_root(&[1]));
    }

    #[test]
    fn inner_products() {
        let a2 = sys("A2");
        let (a1, a2r) = (Root(vec![1, 0]), Root(vec![0, 1]));
        assert_eq!(a2.inner_product(&a1, &a1), 2);
        assert_eq!(a2.inner_product(&a1, &a2r), -1);
        let g2 = sys("G2");
        assert_eq!(g2.inner_product(&Root(vec![0, 1]), &Root(vec![0, 1])), 6);
        assert_eq!(g2.cartan(), &[vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn symmetrized_cartan_is_symmetric_positive() {
        for t in ["B3", "C4", "F4", "G2", "E6"] {
            let rs = sys(t);
            let n = rs.rank();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(rs.symmetrizer()[i] * rs.cartan()[i][j], rs.symmetrizer()[j] * rs.cartan()[j][i]);
                }
            }
            // Leading principal minors of the Gram matrix are positive.
            for k in 1..=n {
                let m: Vec<Vec<i64>> = (0..k).map(|i| rs.simple_form()[i][..k].to_vec()).collect();
                let det = crate::linalg::determinant(&crate::linalg::from_ints(&m));
                assert!(det > crate::rational::rat(0), "{t} minor {k}");
            }
        }
    }

    #[test]
    fn corrupted_form_is_detected() {
        let t: CartanType = "A2".parse().unwrap();
        let rs = RootSystem::from_form(t, vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert!(rs.self_check().is_err());
        // Affine form: closure never terminates.
        assert!(RootSystem::from_form(t, vec![vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn display_root() {
        assert_eq!(Root(vec![3, 2]).to_string(), "3a1+2a2");
        assert_eq!(Root(vec![-1, 0, -2]).to_string(), "-a1-2a3");
    }
}
