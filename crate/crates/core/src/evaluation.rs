//! Evaluation modules over `𝔤 ⊗ S` for a finitely presented ring `S`.
//!
//! Points of `Max S` are given explicitly as rational solutions of the
//! defining ideal.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{format_rational, rat, rem_euclid, Rational};
use crate::rootsys::CartanType;
use crate::weightmod::{MultiplicityFunction, Sl2Generator, WeightModuleDescriptor};

pub const DEFAULT_DEGREE_CAP: u32 = 8;
pub const MAX_TENSOR_FACTORS: usize = 8;

const DEFAULT_NAMES: [&str; 7] = ["t", "u", "v", "w", "x", "y", "z"];

/// `k[x₁,…,x_n]/(f₁,…,f_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateRing {
    names: Vec<String>,
    ideal: Vec<Polynomial>,
}

impl CoordinateRing {
    /// A ring on the given variable names with generators parsed from strings.
    pub fn new(names: Vec<String>, ideal: &[&str]) -> Result<Self> {
        let ideal = ideal.iter().map(|s| Polynomial::parse(s, &names)).collect::<Result<_>>()?;
        Self::from_parts(names, ideal)
    }

    pub fn from_parts(names: Vec<String>, ideal: Vec<Polynomial>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::parse(format!("duplicate variable `{n}`")));
            }
        }
        if ideal.iter().any(|p| p.nvars() != names.len()) {
            return Err(Error::DimensionMismatch { expected: names.len(), got: 0 });
        }
        Ok(CoordinateRing { names, ideal })
    }

    /// Default variable names: `t, u, v, w, x, y, z`, or `x0, x1, …` beyond seven.
    pub fn default_names(n: usize) -> Vec<String> {
        if n <= DEFAULT_NAMES.len() {
            DEFAULT_NAMES[..n].iter().map(|s| s.to_string()).collect()
        } else {
            (0..n).map(|i| format!("x{i}")).collect()
        }
    }

    /// The polynomial ring in `n` variables.
    pub fn affine(n: usize) -> Self {
        CoordinateRing { names: Self::default_names(n), ideal: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(s, &self.names)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.display(&self.names).to_string()
    }
}

impl fmt::Display for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.names.join(","))?;
        if !self.ideal.is_empty() {
            let gens: Vec<String> = self.ideal.iter().map(|p| self.format(p)).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// A rational point of `Max S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", c.join(","))
    }
}

pub fn validate_point(ring: &CoordinateRing, coords: Vec<Rational>) -> Result<Point> {
    if coords.len() != ring.num_vars() {
        return Err(Error::DimensionMismatch { expected: ring.num_vars(), got: coords.len() });
    }
    for g in &ring.ideal {
        let v = g.eval(&coords);
        if !v.is_zero() {
            return Err(Error::InvalidPoint { generator: ring.format(g), value: format_rational(&v) });
        }
    }
    Ok(Point { coords })
}

/// The residue `s(p)`.
pub fn eval_at(s: &Polynomial, p: &Point) -> Rational {
    s.eval(&p.coords)
}

/// Polynomials `s_i` with `s_i(p_j) = δ_ij`, using monomials of the lowest
/// total degree for which the interpolation system is solvable.
pub fn crt_idempotents(ring: &CoordinateRing, points: &[Point], degree_cap: u32) -> Result<Vec<Polynomial>> {
    check_distinct(points)?;
    let n = ring.num_vars();
    for p in points {
        validate_point(ring, p.coords.clone())?;
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }
    for deg in 0..=degree_cap {
        let monos = Monomial::up_to_degree(n, deg);
        let a: Matrix = points.iter().map(|p| monos.iter().map(|m| m.eval(&p.coords)).collect()).collect();
        let sols: Option<Vec<Vec<Rational>>> = (0..points.len())
            .map(|i| {
                let b: Vec<Rational> = (0..points.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
                solve(&a, &b)
            })
            .collect();
        if let Some(sols) = sols {
            return Ok(sols
                .into_iter()
                .map(|c| Polynomial::from_terms(n, monos.iter().cloned().zip(c)))
                .collect());
        }
    }
    Err(Error::DegreeCap(degree_cap))
}

fn check_distinct(points: &[Point]) -> Result<()> {
    for j in 0..points.len() {
        for i in 0..j {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoint(i, j));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub point: Point,
    pub module: WeightModuleDescriptor,
}

/// `V(M, W) = W₁ ⊗ ⋯ ⊗ W_r` with `𝔤 ⊗ S` acting through residues at
/// distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationDescriptor {
    ring: CoordinateRing,
    g: CartanType,
    factors: Vec<Factor>,
}

impl EvaluationDescriptor {
    /// Validates points and modules; trivial factors are dropped.
    pub fn new(ring: CoordinateRing, g: CartanType, factors: Vec<(Vec<Rational>, WeightModuleDescriptor)>) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for (coords, module) in factors {
            let point = validate_point(&ring, coords)?;
            if !module.compatible_with(g) {
                return Err(Error::Incompatible);
            }
            out.push(Factor { point, module });
        }
        let points: Vec<Point> = out.iter().map(|f| f.point.clone()).collect();
        check_distinct(&points)?;
        out.retain(|f| !f.module.is_trivial());
        Ok(EvaluationDescriptor { ring, g, factors: out })
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn g(&self) -> CartanType {
        self.g
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Same descriptor with factors reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let factors = perm.iter().map(|&i| self.factors[i].clone()).collect();
        EvaluationDescriptor { ring: self.ring.clone(), g: self.g, factors }
    }

    pub fn dense_indices(&self) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.factors[i].module.is_infinite()).collect()
    }

    /// Total dimension, `None` if a factor is infinite dimensional.
    pub fn dimension(&self) -> Result<Option<u128>> {
        let mut d: u128 = 1;
        for f in &self.factors {
            match &f.module {
                WeightModuleDescriptor::DenseSL2 { .. } => return Ok(None),
                WeightModuleDescriptor::Trivial => {}
                WeightModuleDescriptor::FiniteDim { g, highest } => {
                    let rs = crate::rootsys::RootSystem::of_type(*g)?;
                    d = d.saturating_mul(crate::weightmod::weyl_dimension(&rs, highest)?);
                }
            }
        }
        Ok(Some(d))
    }
}

/// Sparse linear combination of basis tuples.
pub type FormalCombination = BTreeMap<Vec<i64>, Rational>;

fn add_to(out: &mut FormalCombination, key: Vec<i64>, c: Rational) {
    let e = out.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

/// `(x ⊗ s)·(w₁ ⊗ ⋯ ⊗ w_r) = Σ s(p_i) w₁ ⊗ ⋯ ⊗ x w_i ⊗ ⋯ ⊗ w_r` for `𝔤 = sl₂`.
pub fn evaluation_action(d: &EvaluationDescriptor, x: Sl2Generator, s: &Polynomial, basis_elt: &[i64]) -> Result<FormalCombination> {
    if d.g != (CartanType { letter: 'A', rank: 1 }) {
        return Err(Error::Unsupported(format!("explicit action over {}", d.g)));
    }
    if basis_elt.len() != d.factors.len() {
        return Err(Error::DimensionMismatch { expected: d.factors.len(), got: basis_elt.len() });
    }
    let mut out = FormalCombination::new();
    for (i, f) in d.factors.iter().enumerate() {
        let r = eval_at(s, &f.point);
        let image = f.module.sl2_action(x, basis_elt[i])?;
        if r.is_zero() {
            continue;
        }
        if let Some((c, j)) = image {
            let mut key = basis_elt.to_vec();
            key[i] = j;
            add_to(&mut out, key, r * c);
        }
    }
    Ok(out)
}

/// Linear extension of [`evaluation_action`] to a combination.
pub fn act(d: &EvaluationDescriptor, x: Sl2Generator, s: &Polynomial, v: &FormalCombination) -> Result<FormalCombination> {
    let mut out = FormalCombination::new();
    for (elt, c) in v {
        for (k, a) in evaluation_action(d, x, s, elt)? {
            add_to(&mut out, k, a * c);
        }
    }
    Ok(out)
}

/// Result of a tensor weight-space query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorCount {
    Finite(u64),
    /// The weight space is infinite dimensional: with dense factors `a` and
    /// `b`, `v_{i} ⊗ v_{j−i}` stays in it for every `i`. `windowed` counts
    /// the tuples inside the window.
    Infinite { windowed: u64, dense_factors: (usize, usize) },
}

impl TensorCount {
    pub fn is_infinite(&self) -> bool {
        matches!(self, TensorCount::Infinite { .. })
    }

    /// The exact count, or the windowed count for an infinite space.
    pub fn count(&self) -> u64 {
        match self {
            TensorCount::Finite(n) => *n,
            TensorCount::Infinite { windowed, .. } => *windowed,
        }
    }
}

impl fmt::Display for TensorCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorCount::Finite(n) => write!(f, "{n}"),
            TensorCount::Infinite { windowed, .. } => write!(f, "INFINITE (windowed {windowed})"),
        }
    }
}

fn check_factor_limit(d: &EvaluationDescriptor) -> Result<()> {
    if d.factors.len() > MAX_TENSOR_FACTORS {
        return Err(Error::ResourceLimit { what: "tensor factors", limit: MAX_TENSOR_FACTORS });
    }
    Ok(())
}

/// Convolution of the finite-dimensional factors only.
pub fn finite_part(d: &EvaluationDescriptor) -> Result<MultiplicityFunction> {
    check_factor_limit(d)?;
    let mut acc = MultiplicityFunction::unit(d.g.rank);
    for f in d.factors.iter().filter(|f| !f.module.is_infinite()) {
        acc = acc.convolve(&f.module.multiplicities(d.g, None)?);
    }
    Ok(acc)
}

/// Convolution of all factors, dense factors truncated to `|i| ≤ window`.
pub fn windowed_multiplicities(d: &EvaluationDescriptor, window: Option<i64>) -> Result<MultiplicityFunction> {
    check_factor_limit(d)?;
    let mut acc = MultiplicityFunction::unit(d.g.rank);
    for (i, f) in d.factors.iter().enumerate() {
        let m = f.module.multiplicities(d.g, window).map_err(|e| match e {
            Error::WindowRequired(_) => Error::WindowRequired(i),
            e => e,
        })?;
        acc = acc.convolve(&m);
    }
    Ok(acc)
}

/// Number of finite-part tuples compatible with the dense factors at
/// `weight` (`sl₂` only: dense weights fill `Σμ + 2ℤ`).
fn dense_coset_count(finite: &MultiplicityFunction, mu_sum: &Rational, weight: &Rational) -> u64 {
    finite
        .entries()
        .iter()
        .filter(|(k, _)| {
            let w = finite.weight_of(k);
            rem_euclid(&(weight - mu_sum - &w[0]), &rat(2)).is_zero()
        })
        .map(|(_, m)| m)
        .sum()
}

pub fn tensor_multiplicity(d: &EvaluationDescriptor, weight: &[Rational], window: Option<i64>) -> Result<TensorCount> {
    if weight.len() != d.g.rank {
        return Err(Error::DimensionMismatch { expected: d.g.rank, got: weight.len() });
    }
    let dense = d.dense_indices();
    if let (Some(&i), None) = (dense.first(), window) {
        return Err(Error::WindowRequired(i));
    }
    let finite = finite_part(d)?;
    if dense.is_empty() {
        return Ok(TensorCount::Finite(finite.get(weight)));
    }
    let mu_sum: Rational = dense
        .iter()
        .map(|&i| d.factors[i].module.sl2_parameters().map(|p| p.0))
        .sum::<Result<Rational>>()?;
    let exact = dense_coset_count(&finite, &mu_sum, &weight[0]);
    if dense.len() == 1 {
        return Ok(TensorCount::Finite(exact));
    }
    if exact == 0 {
        return Ok(TensorCount::Finite(0));
    }
    let windowed = windowed_multiplicities(d, window)?.get(weight);
    Ok(TensorCount::Infinite { windowed, dense_factors: (dense[0], dense[1]) })
}
