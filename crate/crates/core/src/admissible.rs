//! Admissibility of evaluation modules and explicit multiplicity growth.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evaluation::{finite_part, windowed_multiplicities, EvaluationDescriptor};
use crate::rational::{format_rational, rat, rem_euclid, Rational};
use crate::rootsys::{RootSet, RootSystem};
use crate::weightmod::{is_simple_dense, WeightModuleDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonAdmissibleReason {
    /// Some root is injective on one factor and its negative on another.
    OppositeDirections,
    /// Some root is injective on two factors.
    SameDirection,
    TwoInfiniteFactors,
}

impl fmt::Display for NonAdmissibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonAdmissibleReason::OppositeDirections => "opposite-directions",
            NonAdmissibleReason::SameDirection => "same-direction",
            NonAdmissibleReason::TwoInfiniteFactors => "two-infinite-factors",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub n: i64,
    pub weight: Vec<Rational>,
    /// Enumerated dimension of the windowed weight space.
    pub lower_bound: u64,
    /// The full weight space is known to be infinite dimensional.
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthWitness {
    pub rows: Vec<WitnessRow>,
    pub checked_up_to: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityVerdict {
    Admissible { bound: u64 },
    NotAdmissible { reason: NonAdmissibleReason, witness: GrowthWitness },
}

impl AdmissibilityVerdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, AdmissibilityVerdict::Admissible { .. })
    }
}

impl fmt::Display for AdmissibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityVerdict::Admissible { bound } => write!(f, "admissible (bound {bound})"),
            AdmissibilityVerdict::NotAdmissible { reason, witness } => {
                write!(f, "not admissible ({reason}, checked up to {})", witness.checked_up_to)
            }
        }
    }
}

fn weight_string(w: &[Rational]) -> String {
    let s: Vec<String> = w.iter().map(format_rational).collect();
    format!("({})", s.join(","))
}

impl GrowthWitness {
    /// `n  weight  lower_bound` rows, one per line.
    pub fn table(&self) -> String {
        let mut out = String::from("n\tweight\tlower_bound\n");
        for r in &self.rows {
            let lb = if r.infinite { format!("{} (infinite)", r.lower_bound) } else { r.lower_bound.to_string() };
            out.push_str(&format!("{}\t{}\t{}\n", r.n, weight_string(&r.weight), lb));
        }
        out
    }
}

/// Roots acting injectively on the module. For a simple dense `sl₂`-module
/// both `e` and `f` are injective; finite-dimensional modules have none.
fn injective_roots(rs: &RootSystem, m: &WeightModuleDescriptor) -> RootSet {
    match m {
        WeightModuleDescriptor::DenseSL2 { .. } => RootSet::full(rs),
        _ => RootSet::empty(rs),
    }
}

fn dense_mu(m: &WeightModuleDescriptor) -> Rational {
    match m {
        WeightModuleDescriptor::DenseSL2 { mu, .. } => mu.clone(),
        _ => unreachable!("dense factor expected"),
    }
}

fn check_simple(d: &EvaluationDescriptor) -> Result<()> {
    for f in d.factors() {
        if let WeightModuleDescriptor::DenseSL2 { mu, tau0 } = &f.module {
            if !is_simple_dense(mu, tau0) {
                return Err(Error::NotSimpleModule { mu: format_rational(mu), tau0: format_rational(tau0) });
            }
        }
    }
    Ok(())
}

/// Admissible iff at most one factor is infinite dimensional; the bound is
/// the exact maximal weight multiplicity.
pub fn classify_admissible(d: &EvaluationDescriptor, check_window: i64) -> Result<AdmissibilityVerdict> {
    check_simple(d)?;
    let dense = d.dense_indices();
    let finite = finite_part(d)?;
    match dense.len() {
        0 => Ok(AdmissibilityVerdict::Admissible { bound: finite.max() }),
        1 => {
            // every weight of the dense factor has multiplicity one, so a
            // weight space collects the finite part over one class mod 2α
            let mut classes: BTreeMap<Rational, u64> = BTreeMap::new();
            for (k, m) in finite.entries() {
                let w = finite.weight_of(k);
                *classes.entry(rem_euclid(&w[0], &rat(2))).or_insert(0) += m;
            }
            Ok(AdmissibilityVerdict::Admissible { bound: classes.values().copied().max().unwrap_or(0) })
        }
        _ => {
            let rs = RootSystem::of_type(d.g())?;
            let (a, b) = (&d.factors()[dense[0]].module, &d.factors()[dense[1]].module);
            let (ta, tb) = (injective_roots(&rs, a), injective_roots(&rs, b));
            let reason = if !ta.is_disjoint(&tb.negated(&rs)) {
                NonAdmissibleReason::OppositeDirections
            } else if !ta.is_disjoint(&tb) {
                NonAdmissibleReason::SameDirection
            } else {
                NonAdmissibleReason::TwoInfiniteFactors
            };
            let witness = descriptor_witness(d, &dense, reason, check_window)?;
            Ok(AdmissibilityVerdict::NotAdmissible { reason, witness })
        }
    }
}

/// Witness rows on the whole descriptor: the two dense factors supply the
/// growing family, the remaining factors a fixed weight `κ` of maximal
/// multiplicity.
fn descriptor_witness(d: &EvaluationDescriptor, dense: &[usize], reason: NonAdmissibleReason, check_window: i64) -> Result<GrowthWitness> {
    let rest: Vec<usize> = (0..d.factors().len()).filter(|i| !dense[..2].contains(i)).collect();
    let rest_d = d.permuted(&rest);
    let rest_m = windowed_multiplicities(&rest_d, Some(0))?;
    let kappa = rest_m
        .table()
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .map(|r| r.0)
        .expect("nonempty multiplicity table");
    let base = dense_mu(&d.factors()[dense[0]].module) + dense_mu(&d.factors()[dense[1]].module) + &kappa[0];
    let mut rows = Vec::new();
    for n in 0..=check_window {
        let (weight, window) = match reason {
            NonAdmissibleReason::OppositeDirections => (base.clone(), n),
            _ => (&base + rat(2 * n), n.max(1)),
        };
        let count = windowed_multiplicities(d, Some(window))?.get(std::slice::from_ref(&weight));
        rows.push(WitnessRow { n, weight: vec![weight], lower_bound: count, infinite: true });
    }
    Ok(GrowthWitness { rows, checked_up_to: check_window })
}

fn dense_pair(d1: &WeightModuleDescriptor, d2: &WeightModuleDescriptor) -> Result<(Rational, Rational)> {
    for m in [d1, d2] {
        match m {
            WeightModuleDescriptor::DenseSL2 { mu, tau0 } if is_simple_dense(mu, tau0) => {}
            WeightModuleDescriptor::DenseSL2 { mu, tau0 } => {
                return Err(Error::NotSimpleModule { mu: format_rational(mu), tau0: format_rational(tau0) })
            }
            _ => return Err(Error::Unsupported("growth witness needs two dense factors".into())),
        }
    }
    Ok((dense_mu(d1), dense_mu(d2)))
}

/// The weight `μ₁ + μ₂` of `v₀ ⊗ v₀`, whose space contains `v_i ⊗ v_{−i}`
/// for all `i`. The row counts the pairs with `|i|, |j| ≤ window`.
pub fn growth_witness_opposite(d1: &WeightModuleDescriptor, d2: &WeightModuleDescriptor, window: i64) -> Result<GrowthWitness> {
    let (m1, m2) = dense_pair(d1, d2)?;
    let target = &m1 + &m2;
    let mut count = 0u64;
    for i in -window..=window {
        for j in -window..=window {
            if &m1 + rat(2 * i) + &m2 + rat(2 * j) == target {
                count += 1;
            }
        }
    }
    Ok(GrowthWitness {
        rows: vec![WitnessRow { n: window, weight: vec![target], lower_bound: count, infinite: true }],
        checked_up_to: window,
    })
}

/// Weight `μ₁ + μ₂ + 2n` and the number of vectors `v_ℓ ⊗ v_{n−ℓ}`,
/// `0 ≤ ℓ ≤ n`, found in it.
pub fn growth_witness_same(d1: &WeightModuleDescriptor, d2: &WeightModuleDescriptor, n: i64) -> Result<(Vec<Rational>, u64)> {
    let (m1, m2) = dense_pair(d1, d2)?;
    let target = &m1 + &m2 + rat(2 * n);
    let count = (0..=n).filter(|&l| &m1 + rat(2 * l) + &m2 + rat(2 * (n - l)) == target).count() as u64;
    Ok((vec![target], count))
}

/// Largest windowed multiplicity and the lexicographically smallest weight
/// attaining it.
pub fn empirical_max_multiplicity(d: &EvaluationDescriptor, window: i64) -> Result<(Vec<Rational>, u64)> {
    let m = windowed_multiplicities(d, Some(window))?;
    let best = m.max();
    let weight = m.table().into_iter().find(|r| r.1 == best).map(|r| r.0).unwrap_or_else(|| vec![rat(0); d.g().rank]);
    Ok((weight, best))
}

pub fn classify_batch(ds: &[EvaluationDescriptor], check_window: i64) -> Vec<Result<AdmissibilityVerdict>> {
    ds.par_iter().map(|d| classify_admissible(d, check_window)).collect()
}
