//! Isomorphism labels for evaluation modules.

use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::{EvaluationDescriptor, Point};
use crate::rational::{format_rational, rat, rem_euclid, Rational};
use crate::weightmod::{casimir_invariant, is_simple_dense, tau, WeightModuleDescriptor};

/// Isomorphism class of a nontrivial factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoClassLabel {
    FiniteDim(Vec<i64>),
    /// Weight coset `μ mod 2` in `[0, 2)` and the Casimir scalar.
    DenseClass { coset: Rational, casimir: Rational },
}

impl IsoClassLabel {
    pub fn of(m: &WeightModuleDescriptor) -> Result<Option<Self>> {
        Ok(match m {
            _ if m.is_trivial() => None,
            WeightModuleDescriptor::Trivial => None,
            WeightModuleDescriptor::FiniteDim { highest, .. } => Some(IsoClassLabel::FiniteDim(highest.clone())),
            WeightModuleDescriptor::DenseSL2 { mu, tau0 } => {
                if !is_simple_dense(mu, tau0) {
                    return Err(Error::NotSimpleModule { mu: format_rational(mu), tau0: format_rational(tau0) });
                }
                Some(IsoClassLabel::DenseClass { coset: rem_euclid(mu, &rat(2)), casimir: casimir_invariant(mu, tau0) })
            }
        })
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, IsoClassLabel::DenseClass { .. })
    }
}

impl fmt::Display for IsoClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoClassLabel::FiniteDim(l) => write!(f, "L{l:?}"),
            IsoClassLabel::DenseClass { coset, casimir } => {
                write!(f, "Dense(coset {}, casimir {})", format_rational(coset), format_rational(casimir))
            }
        }
    }
}

/// Finitely supported function from points to isomorphism classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PsiMap {
    support: Vec<(Point, IsoClassLabel)>,
}

impl PsiMap {
    pub fn support(&self) -> &[(Point, IsoClassLabel)] {
        &self.support
    }

    pub fn dense_count(&self) -> usize {
        self.support.iter().filter(|(_, l)| l.is_dense()).count()
    }
}

impl fmt::Display for PsiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(p, l)| format!("{p} -> {l}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn canonical_form(d: &EvaluationDescriptor) -> Result<PsiMap> {
    let mut support = Vec::with_capacity(d.factors().len());
    for f in d.factors() {
        if let Some(l) = IsoClassLabel::of(&f.module)? {
            support.push((f.point.clone(), l));
        }
    }
    support.sort();
    Ok(PsiMap { support })
}

pub fn is_isomorphic(d1: &EvaluationDescriptor, d2: &EvaluationDescriptor) -> Result<bool> {
    if d1.g() != d2.g() || d1.ring() != d2.ring() {
        return Err(Error::Incompatible);
    }
    Ok(canonical_form(d1)? == canonical_form(d2)?)
}

/// A shift `s` with `|s| ≤ window` such that `v′_i ↦ v_{i+s}` intertwines
/// `e`, `f` and `h` from the second module to the first, checked on
/// `|i| ≤ window`.
pub fn dense_iso_shift(d1: (&Rational, &Rational), d2: (&Rational, &Rational), window: i64) -> Option<i64> {
    let (mu1, t1) = d1;
    let (mu2, t2) = d2;
    (-window..=window).find(|&s| {
        (-window..=window).all(|i| {
            // h: weights agree; f: v′_{i−1} ↦ v_{i−1+s} holds for any s;
            // e: τ′_i = τ_{i+s}
            mu2 + rat(2 * i) == mu1 + rat(2 * (i + s)) && tau(mu2, t2, i) == tau(mu1, t1, i + s)
        })
    })
}

pub fn dense_iso_oracle(d1: &WeightModuleDescriptor, d2: &WeightModuleDescriptor, window: i64) -> Result<bool> {
    match (d1, d2) {
        (WeightModuleDescriptor::DenseSL2 { mu: m1, tau0: t1 }, WeightModuleDescriptor::DenseSL2 { mu: m2, tau0: t2 }) => {
            Ok(dense_iso_shift((m1, t1), (m2, t2), window).is_some())
        }
        _ => Err(Error::Unsupported("dense isomorphism oracle needs two dense modules".into())),
    }
}
