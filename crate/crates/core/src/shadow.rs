//! Partitions `Φ = T ∪ N` of a root system into the roots acting injectively
//! and locally nilpotently on a simple weight module, and exhaustive checks
//! of their structural properties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{
    cone_witness, enumerate_bases, in_cone, is_ideal, Base, CartanType, ConvexityTable, RootSet, RootSystem,
};

/// Largest root count accepted by [`enumerate_and_verify`].
pub const MAX_ENUMERATED_ROOTS: usize = 18;

/// `Φ = T ⊔ N` together with the symmetric and asymmetric parts of each
/// side. The derived sets are computed on construction and never mutated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TNPartition {
    t: RootSet,
    n: RootSet,
    t_s: RootSet,
    t_a: RootSet,
    n_s: RootSet,
    n_a: RootSet,
}

impl TNPartition {
    pub fn t(&self) -> &RootSet {
        &self.t
    }
    pub fn n(&self) -> &RootSet {
        &self.n
    }
    pub fn t_s(&self) -> &RootSet {
        &self.t_s
    }
    pub fn t_a(&self) -> &RootSet {
        &self.t_a
    }
    pub fn n_s(&self) -> &RootSet {
        &self.n_s
    }
    pub fn n_a(&self) -> &RootSet {
        &self.n_a
    }

    fn from_convex(rs: &RootSystem, t: RootSet) -> Self {
        let n = t.complement(rs);
        let t_s = t.intersection(&t.negated(rs));
        let t_a = t.difference(&t_s);
        let n_s = n.intersection(&n.negated(rs));
        let n_a = n.difference(&n_s);
        TNPartition { t, n, t_s, t_a, n_s, n_a }
    }
}

/// Builds the partition with the given `T`; `T` must be convex.
pub fn make_partition(rs: &RootSystem, t: &RootSet) -> Result<TNPartition> {
    if let Some(w) = cone_witness(rs, t) {
        return Err(Error::NotConvex { witness: rs.root(w).0.clone() });
    }
    Ok(TNPartition::from_convex(rs, t.clone()))
}

/// The first base (in `bases` order) with `N_a ⊆ Φ_B^+`.
pub fn find_positive_base<'a>(p: &TNPartition, bases: &'a [Base]) -> Option<&'a Base> {
    bases.iter().find(|b| p.n_a.is_subset(b.positive()))
}

/// One flag per structural property of a module-realizable partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BblReport {
    pub t_s_subsystem: bool,
    pub n_s_subsystem: bool,
    pub n_a_ideal_of_positive: bool,
    pub t_a_ideal_of_negative: bool,
    pub base_of_t_s: bool,
}

impl BblReport {
    pub fn all(&self) -> bool {
        self.t_s_subsystem
            && self.n_s_subsystem
            && self.n_a_ideal_of_positive
            && self.t_a_ideal_of_negative
            && self.base_of_t_s
    }
}

/// Closed under negation and under sums that are roots.
pub fn is_subsystem(rs: &RootSystem, x: &RootSet) -> bool {
    x.negated(rs) == *x && is_ideal(rs, x, x)
}

pub fn check_bbl_properties(rs: &RootSystem, p: &TNPartition, base: &Base) -> BblReport {
    let b_in_ts: Vec<usize> = (0..rs.rank()).filter(|&k| p.t_s.contains(base.simples()[k])).collect();
    let base_of_t_s = p.t_s.iter().all(|r| {
        let c = base.coords(&rs.root(r).0);
        c.iter().enumerate().all(|(k, &x)| x == 0 || b_in_ts.contains(&k))
    });
    BblReport {
        t_s_subsystem: is_subsystem(rs, &p.t_s),
        n_s_subsystem: is_subsystem(rs, &p.n_s),
        n_a_ideal_of_positive: p.n_a.is_subset(base.positive()) && is_ideal(rs, &p.n_a, base.positive()),
        t_a_ideal_of_negative: is_ideal(rs, &p.t_a, &base.negative(rs)),
        base_of_t_s,
    }
}

/// A pair `α ∈ N_s`, `β ∈ T_s` with `α+β ∈ Φ`, if one exists.
pub fn verify_sum_not_root(rs: &RootSystem, p: &TNPartition) -> Option<(usize, usize)> {
    p.n_s.iter().find_map(|a| p.t_s.iter().find(|&b| rs.sum(a, b).is_some()).map(|b| (a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowCounterexample {
    pub t: Vec<Vec<i64>>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShadowSummary {
    pub system: CartanType,
    /// Convex sets `T` examined.
    pub total: usize,
    /// Partitions passing the structural filters for their first positive base.
    pub filtered: usize,
    /// Filtered partitions on which the sum-not-a-root check passed.
    pub verified: usize,
    /// Partitions with `N_a ≠ −T_a` (must be zero).
    pub asymmetry_violations: usize,
    /// Filtered partitions for which some other base with `N_a ⊆ Φ_B^+`
    /// breaks one of the two ideal properties.
    pub base_inconsistent: usize,
    pub counterexample: Option<ShadowCounterexample>,
}

impl ShadowSummary {
    pub fn counterexamples(&self) -> usize {
        self.filtered - self.verified
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.asymmetry_violations == 0 && self.base_inconsistent == 0
    }

    fn merge(mut self, other: ShadowSummary) -> ShadowSummary {
        self.total += other.total;
        self.filtered += other.filtered;
        self.verified += other.verified;
        self.asymmetry_violations += other.asymmetry_violations;
        self.base_inconsistent += other.base_inconsistent;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    fn empty(system: CartanType) -> Self {
        ShadowSummary {
            system,
            total: 0,
            filtered: 0,
            verified: 0,
            asymmetry_violations: 0,
            base_inconsistent: 0,
            counterexample: None,
        }
    }
}

/// Runs every check on one convex `T` and folds the outcome into `acc`.
fn examine(rs: &RootSystem, bases: &[Base], t: RootSet, acc: &mut ShadowSummary) {
    let p = TNPartition::from_convex(rs, t);
    acc.total += 1;
    if p.n_a != p.t_a.negated(rs) {
        acc.asymmetry_violations += 1;
    }
    let Some(base) = find_positive_base(&p, bases) else {
        return;
    };
    if !check_bbl_properties(rs, &p, base).all() {
        return;
    }
    acc.filtered += 1;
    let consistent = bases.iter().filter(|b| p.n_a.is_subset(b.positive())).all(|b| {
        is_ideal(rs, &p.n_a, b.positive()) && is_ideal(rs, &p.t_a, &b.negative(rs))
    });
    if !consistent {
        acc.base_inconsistent += 1;
    }
    match verify_sum_not_root(rs, &p) {
        None => acc.verified += 1,
        Some((a, b)) => {
            if acc.counterexample.is_none() {
                acc.counterexample = Some(ShadowCounterexample {
                    t: p.t.sorted_coords(rs),
                    alpha: rs.root(a).0.clone(),
                    beta: rs.root(b).0.clone(),
                });
            }
        }
    }
}

/// Enumerates every convex `T ⊆ Φ`, keeps the partitions passing the
/// structural filters and checks that no `α ∈ N_s`, `β ∈ T_s` sum to a root.
pub fn enumerate_and_verify(rs: &RootSystem) -> Result<ShadowSummary> {
    if rs.len() > MAX_ENUMERATED_ROOTS {
        return Err(Error::ResourceLimit { what: "roots for subset enumeration", limit: MAX_ENUMERATED_ROOTS });
    }
    let table = ConvexityTable::new(rs)?;
    let bases = enumerate_bases(rs)?;
    let total: u64 = 1 << rs.len();
    const CHUNK: u64 = 1 << 12;
    let summary = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = ShadowSummary::empty(rs.cartan_type());
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if table.is_convex(mask) {
                    examine(rs, &bases, RootSet::from_mask(rs, mask), &mut acc);
                }
            }
            acc
        })
        .reduce(|| ShadowSummary::empty(rs.cartan_type()), ShadowSummary::merge);
    Ok(summary)
}

/// Samples convex sets as `Φ ∩ cone(G)` for random generator sets `G` of
/// size 1 to rank+1, for systems too large to enumerate.
pub fn sample_and_verify(rs: &RootSystem, samples: usize, seed: u64) -> Result<ShadowSummary> {
    let bases = enumerate_bases(rs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<Vec<usize>> = (0..samples)
        .map(|_| {
            let k = rng.gen_range(1..=rs.rank() + 1);
            (0..k).map(|_| rng.gen_range(0..rs.len())).collect()
        })
        .collect();
    let summary = gens
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = ShadowSummary::empty(rs.cartan_type());
            for g in chunk {
                let g = RootSet::from_indices(rs, g.iter().copied());
                let t = RootSet::from_indices(
                    rs,
                    (0..rs.len()).filter(|&i| g.contains(i) || in_cone(rs, &g, &rs.root(i).0)),
                );
                examine(rs, &bases, t, &mut acc);
            }
            acc
        })
        .reduce(|| ShadowSummary::empty(rs.cartan_type()), ShadowSummary::merge);
    Ok(summary)
}
