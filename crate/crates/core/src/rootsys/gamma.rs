//! Ideals of root subsets, the ideal `⟨−α⟩` and the γ-existence check.

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_bases, Base, CartanType, RootSet, RootSystem};
use crate::error::{Error, Result};

/// `X` is an ideal of `X′`: `α ∈ X, β ∈ X′, α+β ∈ Φ ⇒ α+β ∈ X`.
pub fn is_ideal(rs: &RootSystem, x: &RootSet, xp: &RootSet) -> bool {
    x.iter().all(|a| xp.iter().all(|b| rs.sum(a, b).map_or(true, |s| x.contains(s))))
}

/// `⟨−α⟩ = {τ ∈ Φ | n_α^τ < 0}`, coefficients taken in `base`.
pub fn minus_alpha_ideal(rs: &RootSystem, base: &Base, alpha: usize) -> Result<RootSet> {
    let k = base.position(alpha).ok_or_else(|| Error::NotSimple(rs.root(alpha).0.clone()))?;
    Ok(RootSet::from_indices(
        rs,
        (0..rs.len()).filter(|&t| base.coords(&rs.root(t).0)[k] < 0),
    ))
}

/// The smallest ideal of `Φ_B^-` containing `−α`, by closure.
pub fn generated_negative_ideal(rs: &RootSystem, base: &Base, alpha: usize) -> RootSet {
    let neg = base.negative(rs);
    let mut x = RootSet::from_indices(rs, [rs.neg(alpha)]);
    let mut frontier = vec![rs.neg(alpha)];
    while let Some(a) = frontier.pop() {
        for b in neg.iter() {
            if let Some(s) = rs.sum(a, b) {
                if !x.contains(s) {
                    x.insert(s);
                    frontier.push(s);
                }
            }
        }
    }
    x
}

/// A chain `α = μ_0 ≺ μ_1 ≺ ⋯ ≺ μ_r = θ_B` with every step a simple root of
/// `base`. At each step the first simple root (in base order) that keeps
/// the sum a root is taken, which yields the lexicographically first chain.
pub fn chain_to_highest_root(rs: &RootSystem, base: &Base, alpha: usize) -> Result<Vec<usize>> {
    base.position(alpha).ok_or_else(|| Error::NotSimple(rs.root(alpha).0.clone()))?;
    let top = base.from_coords(rs, &rs.highest_root().0);
    let top = rs.index_of(&top).expect("w(θ) is a root");
    let mut chain = vec![alpha];
    let mut cur = alpha;
    while cur != top {
        cur = base
            .simples()
            .iter()
            .find_map(|&s| rs.sum(cur, s))
            .expect("every positive root below θ has a simple successor");
        chain.push(cur);
    }
    Ok(chain)
}

/// Some `γ ∈ ⟨−α⟩` with `β+γ ∈ ⟨−α⟩`, first by root index.
pub fn find_gamma(rs: &RootSystem, ideal: &RootSet, beta: usize) -> Option<usize> {
    ideal.iter().find(|&g| rs.sum(beta, g).is_some_and(|s| ideal.contains(s)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaCounterexample {
    pub base: Vec<Vec<i64>>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaReport {
    pub system: CartanType,
    pub bases: usize,
    /// Number of (base, α, β) triples examined.
    pub cases: usize,
    pub counterexample: Option<GammaCounterexample>,
}

impl GammaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every base `B`, simple `α ∈ B` and `β ∈ Φ \ ±⟨−α⟩`, looks for
/// `γ ∈ ⟨−α⟩` with `β+γ ∈ ⟨−α⟩`.
pub fn verify_gamma_lemma(rs: &RootSystem) -> Result<GammaReport> {
    let bases = enumerate_bases(rs)?;
    let results: Vec<(usize, Option<GammaCounterexample>)> = bases
        .par_iter()
        .map(|base| check_base(rs, base))
        .collect();
    let cases = results.iter().map(|r| r.0).sum();
    let counterexample = results.into_iter().find_map(|r| r.1);
    Ok(GammaReport { system: rs.cartan_type(), bases: bases.len(), cases, counterexample })
}

fn check_base(rs: &RootSystem, base: &Base) -> (usize, Option<GammaCounterexample>) {
    let mut cases = 0;
    for &alpha in base.simples() {
        let ideal = minus_alpha_ideal(rs, base, alpha).expect("alpha is simple");
        let both = ideal.union(&ideal.negated(rs));
        for beta in (0..rs.len()).filter(|&b| !both.contains(b)) {
            cases += 1;
            if find_gamma(rs, &ideal, beta).is_none() {
                let ce = GammaCounterexample {
                    base: base.simples().iter().map(|&s| rs.root(s).0.clone()).collect(),
                    alpha: rs.root(alpha).0.clone(),
                    beta: rs.root(beta).0.clone(),
                };
                return (cases, Some(ce));
            }
        }
    }
    (cases, None)
}
