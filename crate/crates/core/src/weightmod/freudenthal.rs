use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::MultiplicityFunction;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{rat, Rational};
use crate::rootsys::{CartanType, RootSystem};

fn check_dominant(rs: &RootSystem, highest: &[i64]) -> Result<()> {
    if highest.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: highest.len() });
    }
    if highest.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(highest.to_vec()));
    }
    Ok(())
}

/// Weight multiplicities of the simple module `L(λ)`, `λ` in
/// fundamental-weight coordinates, by Freudenthal's recursion.
///
/// Weights are visited level by level below `λ`. Both sides of the
/// recursion are integers: `(λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = (λ−μ, λ+μ+2ρ)` pairs a
/// root-lattice vector with an integral weight.
pub fn freudenthal(rs: &RootSystem, highest: &[i64]) -> Result<MultiplicityFunction> {
    check_dominant(rs, highest)?;
    let n = rs.rank();
    let d = rs.symmetrizer();
    let positive: Vec<(Vec<i64>, Vec<i64>)> = rs
        .positive_indices()
        .map(|i| (rs.root(i).0.clone(), rs.root_to_weight(&rs.root(i).0)))
        .collect();
    let simple_weights: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            rs.root_to_weight(&e)
        })
        .collect();
    let cartan_inv = linalg::inverse(&linalg::from_ints(rs.cartan())).expect("Cartan matrix is invertible");

    let weight_of = |k: &[i64]| -> Vec<i64> {
        let mut mu = highest.to_vec();
        for (i, &ki) in k.iter().enumerate() {
            for (m, s) in mu.iter_mut().zip(&simple_weights[i]) {
                *m -= ki * s;
            }
        }
        mu
    };
    // μ is a weight of L(λ) iff its dominant conjugate is ≤ λ.
    let in_support = |mu: &[i64]| -> bool {
        let mut mu = mu.to_vec();
        while let Some(i) = (0..n).find(|&i| mu[i] < 0) {
            let c = mu[i];
            for (m, s) in mu.iter_mut().zip(&simple_weights[i]) {
                *m -= c * s;
            }
        }
        let diff: Vec<Rational> = highest.iter().zip(&mu).map(|(l, m)| rat(l - m)).collect();
        cartan_inv
            .iter()
            .all(|row| !row.iter().zip(&diff).map(|(a, b)| a * b).sum::<Rational>().is_negative())
    };

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::from([(vec![0; n], 1)]);
    let mut level: Vec<Vec<i64>> = vec![vec![0; n]];
    while !level.is_empty() {
        let candidates: BTreeSet<Vec<i64>> = level
            .iter()
            .flat_map(|k| {
                (0..n).map(move |i| {
                    let mut k2 = k.clone();
                    k2[i] += 1;
                    k2
                })
            })
            .collect();
        let mut next = Vec::new();
        for k in candidates {
            let mu = weight_of(&k);
            if !in_support(&mu) {
                continue;
            }
            let mut numer: i64 = 0;
            for (c, cw) in &positive {
                let mut j = 1;
                loop {
                    let kk: Vec<i64> = k.iter().zip(c).map(|(a, b)| a - j * b).collect();
                    if kk.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&kk) {
                        let shifted: Vec<i64> = mu.iter().zip(cw).map(|(a, b)| a + j * b).collect();
                        numer += m as i64 * rs.weight_root_pairing(&shifted, c);
                    }
                    j += 1;
                }
            }
            numer *= 2;
            let denom: i64 = (0..n).map(|i| k[i] * d[i] * (highest[i] + mu[i] + 2)).sum();
            debug_assert!(denom > 0);
            debug_assert_eq!(numer % denom, 0);
            let m = numer / denom;
            if m > 0 {
                mult.insert(k.clone(), m as u64);
                next.push(k);
            }
        }
        level = next;
    }

    let entries: BTreeMap<Vec<i64>, u64> = mult.into_iter().map(|(k, m)| (weight_of(&k), m)).collect();
    Ok(MultiplicityFunction::finite(vec![Rational::from_integer(0.into()); n], entries))
}

/// `Π_{α>0} (λ+ρ, α)/(ρ, α)`.
pub fn weyl_dimension(rs: &RootSystem, highest: &[i64]) -> Result<u128> {
    check_dominant(rs, highest)?;
    let n = rs.rank();
    let shifted: Vec<i64> = highest.iter().map(|x| x + 1).collect();
    let rho = vec![1; n];
    let mut p = Rational::from_integer(BigInt::from(1));
    for i in rs.positive_indices() {
        let c = &rs.root(i).0;
        p *= Rational::new(rs.weight_root_pairing(&shifted, c).into(), rs.weight_root_pairing(&rho, c).into());
    }
    debug_assert!(p.is_integer());
    p.to_integer().to_u128().ok_or(Error::ResourceLimit { what: "Weyl dimension", limit: usize::MAX })
}

/// Memoized [`freudenthal`], safe to share between threads.
#[derive(Debug, Default)]
pub struct FreudenthalCache {
    map: RwLock<HashMap<(CartanType, Vec<i64>), Arc<MultiplicityFunction>>>,
}

impl FreudenthalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, rs: &RootSystem, highest: &[i64]) -> Result<Arc<MultiplicityFunction>> {
        let key = (rs.cartan_type(), highest.to_vec());
        if let Some(m) = self.map.read().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(freudenthal(rs, highest)?);
        self.map.write().expect("cache lock").entry(key).or_insert_with(|| m.clone());
        Ok(m)
    }
}
