//! Brute-force reference computations used to cross-check the main
//! algorithms.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::evaluation::EvaluationDescriptor;
use crate::admissible::empirical_max_multiplicity;
use crate::linalg::Rref;
use crate::rational::{rat, Rational};
use crate::ucext::{tensor, FiniteAlgebra};
use crate::weightmod::WeightModuleDescriptor;

/// Weights of a basis of a finite-dimensional factor, one entry per vector.
fn basis_weights(d: &EvaluationDescriptor, m: &WeightModuleDescriptor) -> Result<Vec<Vec<Rational>>> {
    match m {
        WeightModuleDescriptor::DenseSL2 { .. } => {
            Err(Error::InfiniteWeightSpace("basis enumeration of a dense factor".into()))
        }
        WeightModuleDescriptor::FiniteDim { g, highest } if g.letter == 'A' && g.rank == 1 => {
            Ok((0..=highest[0]).map(|j| vec![rat(highest[0] - 2 * j)]).collect())
        }
        _ => {
            let table = m.multiplicities(d.g(), None)?.table();
            Ok(table.into_iter().flat_map(|(w, k)| std::iter::repeat(w).take(k as usize)).collect())
        }
    }
}

/// Number of basis tuples of the full tensor product whose weights sum to
/// `weight`. All factors must be finite dimensional.
pub fn tensor_tuple_count(d: &EvaluationDescriptor, weight: &[Rational]) -> Result<u64> {
    let lists = d.factors().iter().map(|f| basis_weights(d, &f.module)).collect::<Result<Vec<_>>>()?;
    fn rec(lists: &[Vec<Vec<Rational>>], acc: Vec<Rational>, target: &[Rational]) -> u64 {
        match lists.split_first() {
            None => u64::from(acc == target),
            Some((first, rest)) => first
                .iter()
                .map(|w| rec(rest, acc.iter().zip(w).map(|(a, b)| a + b).collect(), target))
                .sum(),
        }
    }
    Ok(rec(&lists, vec![Rational::zero(); d.g().rank], weight))
}

/// `dim Ω_S / dS`, with `Ω_S` presented as `S ⊗ S` (`a ⊗ b ↦ a db`) modulo
/// the Leibniz rule.
pub fn omega_mod_exact_dim(a: &FiniteAlgebra) -> usize {
    let d = a.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        let ei = a.basis(i);
        for j in 0..d {
            let ej = a.basis(j);
            for k in 0..d {
                let ek = a.basis(k);
                // a d(bc) − ab dc − ac db
                let x = tensor(&ei, &a.mul(&ej, &ek));
                let y = tensor(&a.mul(&ei, &ej), &ek);
                let z = tensor(&a.mul(&ei, &ek), &ej);
                rows.push((0..d * d).map(|c| &x[c] - &y[c] - &z[c]).collect());
            }
        }
        rows.push(tensor(a.unit(), &ei));
    }
    d * d - Rref::new(rows, d * d).rank()
}

/// Maximal windowed multiplicity at `w, 2w, 4w`; bounded when the three
/// agree.
pub fn doubling_profile(d: &EvaluationDescriptor, start: i64) -> Result<(bool, [u64; 3])> {
    let mut out = [0u64; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = empirical_max_multiplicity(d, start << k)?.1;
    }
    Ok((out[0] == out[1] && out[1] == out[2], out))
}
