//! Weight-module building blocks for evaluation modules: finite-dimensional
//! simple modules and the dense `sl₂` family.

mod dense;
mod freudenthal;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};
use crate::rootsys::{CartanType, RootSystem};

pub use dense::{casimir_invariant, dense_action, is_simple_dense, tau, verify_sl2_relations, Sl2RelationFailure};
pub use freudenthal::{freudenthal, weyl_dimension, FreudenthalCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sl2Generator {
    E,
    H,
    F,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Sl2Generator::E, Sl2Generator::H, Sl2Generator::F];
}

impl std::str::FromStr for Sl2Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Sl2Generator::E),
            "h" => Ok(Sl2Generator::H),
            "f" => Ok(Sl2Generator::F),
            _ => Err(Error::parse(format!("unknown sl2 generator `{s}`"))),
        }
    }
}

/// A simple weight `𝔤`-module from one of the concrete families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WeightModuleDescriptor {
    Trivial,
    /// `L(λ)`, `λ` dominant integral in fundamental-weight coordinates.
    FiniteDim { g: CartanType, highest: Vec<i64> },
    /// `W(μ, τ₀)` over `sl₂`.
    DenseSL2 { mu: Rational, tau0: Rational },
}

impl WeightModuleDescriptor {
    pub fn finite(g: CartanType, highest: Vec<i64>) -> Result<Self> {
        if highest.len() != g.rank {
            return Err(Error::DimensionMismatch { expected: g.rank, got: highest.len() });
        }
        if highest.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(highest));
        }
        Ok(WeightModuleDescriptor::FiniteDim { g, highest })
    }

    /// `L(n)` over `sl₂`.
    pub fn sl2(n: i64) -> Result<Self> {
        Self::finite(CartanType { letter: 'A', rank: 1 }, vec![n])
    }

    /// A dense module; rejects parameters for which it is not simple.
    pub fn dense(mu: Rational, tau0: Rational) -> Result<Self> {
        if !is_simple_dense(&mu, &tau0) {
            return Err(Error::NotSimpleModule { mu: format_rational(&mu), tau0: format_rational(&tau0) });
        }
        Ok(WeightModuleDescriptor::DenseSL2 { mu, tau0 })
    }

    /// A dense module without the simplicity check.
    pub fn dense_unchecked(mu: Rational, tau0: Rational) -> Self {
        WeightModuleDescriptor::DenseSL2 { mu, tau0 }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            WeightModuleDescriptor::Trivial => true,
            WeightModuleDescriptor::FiniteDim { highest, .. } => highest.iter().all(|&x| x == 0),
            WeightModuleDescriptor::DenseSL2 { .. } => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WeightModuleDescriptor::DenseSL2 { .. })
    }

    /// Whether this module can be a factor over `g`.
    pub fn compatible_with(&self, g: CartanType) -> bool {
        match self {
            WeightModuleDescriptor::Trivial => true,
            WeightModuleDescriptor::FiniteDim { g: h, .. } => *h == g,
            WeightModuleDescriptor::DenseSL2 { .. } => g == CartanType { letter: 'A', rank: 1 },
        }
    }

    /// `(μ, τ₀)` of the `sl₂`-module as a member of the dense family's
    /// formulas: `L(n)` is the quotient with `μ = −n`, `τ₀ = n` on indices
    /// `0..=n`, and the trivial module is `L(0)`.
    pub fn sl2_parameters(&self) -> Result<(Rational, Rational, Option<i64>)> {
        match self {
            WeightModuleDescriptor::Trivial => Ok((rat(0), rat(0), Some(0))),
            WeightModuleDescriptor::FiniteDim { g, highest } if g.letter == 'A' && g.rank == 1 => {
                let n = highest[0];
                Ok((rat(-n), rat(n), Some(n)))
            }
            WeightModuleDescriptor::FiniteDim { g, .. } => {
                Err(Error::Unsupported(format!("explicit action for {g} modules")))
            }
            WeightModuleDescriptor::DenseSL2 { mu, tau0 } => Ok((mu.clone(), tau0.clone(), None)),
        }
    }

    /// Action of a generator on basis vector `i`: `None` if the image is zero.
    pub fn sl2_action(&self, x: Sl2Generator, i: i64) -> Result<Option<(Rational, i64)>> {
        let (mu, tau0, top) = self.sl2_parameters()?;
        if let Some(top) = top {
            if i < 0 || i > top {
                return Err(Error::Parse(format!("basis index {i} out of range 0..={top}")));
            }
        }
        let (c, j) = dense_action(&mu, &tau0, x, i);
        let out_of_range = top.is_some_and(|top| j < 0 || j > top);
        Ok(if c.is_zero() || out_of_range { None } else { Some((c, j)) })
    }

    /// Weight of basis vector `i` in fundamental-weight coordinates (`sl₂`).
    pub fn sl2_weight(&self, i: i64) -> Result<Rational> {
        let (mu, _, _) = self.sl2_parameters()?;
        Ok(mu + rat(2 * i))
    }

    /// Multiplicity function; `window` bounds the dense index range.
    pub fn multiplicities(&self, g: CartanType, window: Option<i64>) -> Result<MultiplicityFunction> {
        if !self.compatible_with(g) {
            return Err(Error::Incompatible);
        }
        match self {
            WeightModuleDescriptor::Trivial => Ok(MultiplicityFunction::finite(
                vec![Rational::zero(); g.rank],
                BTreeMap::from([(vec![0; g.rank], 1)]),
            )),
            WeightModuleDescriptor::FiniteDim { highest, .. } => {
                freudenthal(&RootSystem::of_type(g)?, highest)
            }
            WeightModuleDescriptor::DenseSL2 { mu, .. } => {
                let w = window.ok_or(Error::WindowRequired(0))?;
                let entries = (-w..=w).map(|i| (vec![2 * i], 1)).collect();
                Ok(MultiplicityFunction { coset: vec![mu.clone()], entries, infinite: true, window: Some(w) })
            }
        }
    }

    /// `dim V_weight` for a weight in fundamental-weight coordinates.
    pub fn multiplicity(&self, g: CartanType, weight: &[Rational]) -> Result<u64> {
        if weight.len() != g.rank {
            return Err(Error::DimensionMismatch { expected: g.rank, got: weight.len() });
        }
        if !self.compatible_with(g) {
            return Err(Error::Incompatible);
        }
        match self {
            WeightModuleDescriptor::DenseSL2 { mu, .. } => {
                let d = (&weight[0] - mu) / rat(2);
                Ok(u64::from(d.is_integer()))
            }
            _ => {
                let m = self.multiplicities(g, None)?;
                Ok(m.get(weight))
            }
        }
    }
}

/// Sparse weight → multiplicity map. Weights are `coset + key` with integer
/// keys in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityFunction {
    coset: Vec<Rational>,
    entries: BTreeMap<Vec<i64>, u64>,
    infinite: bool,
    window: Option<i64>,
}

impl MultiplicityFunction {
    pub fn finite(coset: Vec<Rational>, mut entries: BTreeMap<Vec<i64>, u64>) -> Self {
        entries.retain(|_, m| *m > 0);
        MultiplicityFunction { coset, entries, infinite: false, window: None }
    }

    pub fn coset(&self) -> &[Rational] {
        &self.coset
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    /// The entries are a windowed truncation of an infinite support.
    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn max(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// The lattice key of `weight`, if it lies in this function's coset.
    pub fn key_of(&self, weight: &[Rational]) -> Option<Vec<i64>> {
        weight
            .iter()
            .zip(&self.coset)
            .map(|(w, c)| {
                let d = w - c;
                crate::rational::to_i64(&d)
            })
            .collect()
    }

    pub fn get(&self, weight: &[Rational]) -> u64 {
        self.key_of(weight).and_then(|k| self.entries.get(&k).copied()).unwrap_or(0)
    }

    pub fn weight_of(&self, key: &[i64]) -> Vec<Rational> {
        key.iter().zip(&self.coset).map(|(k, c)| c + rat(*k)).collect()
    }

    /// Tensor product of (windowed) multiplicity functions: the coset adds,
    /// the counts convolve.
    pub fn convolve(&self, other: &MultiplicityFunction) -> MultiplicityFunction {
        let coset = self.coset.iter().zip(&other.coset).map(|(a, b)| a + b).collect();
        let mut entries: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (a, m) in &self.entries {
            for (b, n) in &other.entries {
                let k: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *entries.entry(k).or_insert(0) += m * n;
            }
        }
        let window = match (self.window, other.window) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        MultiplicityFunction { coset, entries, infinite: self.infinite || other.infinite, window }
    }

    /// The one-dimensional trivial function of the given rank.
    pub fn unit(rank: usize) -> Self {
        MultiplicityFunction::finite(vec![Rational::zero(); rank], BTreeMap::from([(vec![0; rank], 1)]))
    }

    /// `(weight, count)` rows sorted lexicographically by weight.
    pub fn table(&self) -> Vec<(Vec<Rational>, u64)> {
        let mut rows: Vec<(Vec<Rational>, u64)> =
            self.entries.iter().map(|(k, &m)| (self.weight_of(k), m)).collect();
        rows.sort();
        rows
    }
}

impl Default for MultiplicityFunction {
    fn default() -> Self {
        Self::unit(1)
    }
}
