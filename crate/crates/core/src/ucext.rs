//! The universal central extension `(𝔤 ⊗ S) ⊕ ⟨S,S⟩` for a
//! finite-dimensional algebra `S` and `𝔤 = sl₂`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evaluation::{act, EvaluationDescriptor, FormalCombination};
use crate::linalg::{Matrix, Rref};
use crate::poly::Polynomial;
use crate::rational::{format_rational, rat, Rational};
use crate::rootsys::CartanType;
use crate::weightmod::Sl2Generator;

/// A finite-dimensional algebra given by structure constants:
/// `e_i e_j = Σ_k table[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
}

impl FiniteAlgebra {
    /// Checks shapes only; see [`FiniteAlgebra::validate`] for the axioms.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Vec<Rational>>>, unit: Vec<Rational>) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        let shape_ok = table.len() == d && table.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d));
        if !shape_ok {
            return Err(Error::InvalidAlgebra(format!("multiplication table is not {d}x{d}x{d}")));
        }
        if unit.len() != d {
            return Err(Error::InvalidAlgebra(format!("unit has {} coordinates, expected {d}", unit.len())));
        }
        Ok(FiniteAlgebra { labels, table, unit })
    }

    /// `k[t]/(t^m)` on the basis `1, t, …, t^{m−1}`.
    pub fn truncated_polynomial(m: usize) -> Self {
        let labels = (0..m).map(|i| if i == 0 { "1".to_string() } else { format!("t^{i}") }).collect();
        let table = (0..m)
            .map(|i| (0..m).map(|j| basis_vec(m, (i + j < m).then_some(i + j))).collect())
            .collect();
        FiniteAlgebra { labels, table, unit: basis_vec(m, Some(0)) }
    }

    /// `k^m` on its primitive idempotents.
    pub fn split(m: usize) -> Self {
        let labels = (0..m).map(|i| format!("e{i}")).collect();
        let table = (0..m).map(|i| (0..m).map(|j| basis_vec(m, (i == j).then_some(i))).collect()).collect();
        FiniteAlgebra { labels, table, unit: vec![Rational::one(); m] }
    }

    /// `k[x₁,…,x_n]/(x₁,…,x_n)²` on the basis `1, x₁, …, x_n`.
    pub fn square_zero(n: usize) -> Self {
        let d = n + 1;
        let labels = (0..d).map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") }).collect();
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match (i, j) {
                        (0, j) => basis_vec(d, Some(j)),
                        (i, 0) => basis_vec(d, Some(i)),
                        _ => basis_vec(d, None),
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra { labels, table, unit: basis_vec(d, Some(0)) }
    }

    /// `k[x]/(x² − c)` on the basis `1, x`.
    pub fn quadratic(c: Rational) -> Self {
        let z = Rational::zero;
        let o = Rational::one;
        let table = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![c, z()]]];
        FiniteAlgebra { labels: vec!["1".into(), "x".into()], table, unit: vec![o(), z()] }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Vec<Rational>>] {
        &self.table
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        basis_vec(self.dim(), Some(i))
    }

    /// Overwrites one structure constant vector; used for negative controls.
    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        self.table[i][j] = v;
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Commutativity, associativity and the unit on all basis elements.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let ei = self.basis(i);
            if self.mul(&self.unit, &ei) != ei {
                return Err(Error::InvalidAlgebra(format!("unit does not fix {}", self.labels[i])));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidAlgebra(format!("{}*{} != {}*{}", self.labels[i], self.labels[j], self.labels[j], self.labels[i])));
                }
                for k in 0..d {
                    let ek = self.basis(k);
                    let left = self.mul(&self.table[i][j], &ek);
                    let right = self.mul(&ei, &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "({0}*{1})*{2} != {0}*({1}*{2})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn basis_vec(d: usize, i: Option<usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    if let Some(i) = i {
        v[i] = Rational::one();
    }
    v
}

/// `r ⊗ s` in coordinates `i·d + j`.
pub fn tensor(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `⟨S,S⟩ = (S ⊗ S)/Q` with `Q` spanned by `r⊗s + s⊗r` and
/// `rs⊗t + st⊗r + tr⊗s`.
#[derive(Debug, Clone)]
pub struct CentralSpace {
    algebra: FiniteAlgebra,
    relations: Matrix,
    rref: Rref,
    quotient_basis: Vec<usize>,
}

impl CentralSpace {
    fn build(algebra: FiniteAlgebra) -> Self {
        let d = algebra.dim();
        let mut relations = Vec::new();
        for r in 0..d {
            for s in 0..d {
                let (er, es) = (algebra.basis(r), algebra.basis(s));
                let a = tensor(&er, &es);
                let b = tensor(&es, &er);
                relations.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
                for t in 0..d {
                    let et = algebra.basis(t);
                    let x = tensor(&algebra.table[r][s], &et);
                    let y = tensor(&algebra.table[s][t], &er);
                    let z = tensor(&algebra.table[t][r], &es);
                    relations.push((0..d * d).map(|k| &x[k] + &y[k] + &z[k]).collect());
                }
            }
        }
        let rref = Rref::new(relations.clone(), d * d);
        let quotient_basis = rref.free_columns();
        CentralSpace { algebra, relations, rref, quotient_basis }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// The spanning set of `Q`, one row per relation.
    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Coordinates in `⟨S,S⟩` of an element of `S ⊗ S`.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.rref.reduce(v);
        self.quotient_basis.iter().map(|&c| r[c].clone()).collect()
    }

    /// `⟨a, b⟩`.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.project(&tensor(a, b))
    }
}

pub fn central_space(a: &FiniteAlgebra) -> Result<CentralSpace> {
    a.validate()?;
    Ok(CentralSpace::build(a.clone()))
}

const GENS: [Sl2Generator; 3] = Sl2Generator::ALL;

fn gen_index(x: Sl2Generator) -> usize {
    GENS.iter().position(|&g| g == x).expect("generator")
}

/// `[x, y]` on the basis `e, h, f`, as a coefficient and a generator.
pub fn sl2_bracket(x: Sl2Generator, y: Sl2Generator) -> Option<(i64, Sl2Generator)> {
    use Sl2Generator::*;
    match (x, y) {
        (E, F) => Some((1, H)),
        (F, E) => Some((-1, H)),
        (H, E) => Some((2, E)),
        (E, H) => Some((-2, E)),
        (H, F) => Some((-2, F)),
        (F, H) => Some((2, F)),
        _ => None,
    }
}

/// `(x|y) = tr(ad x ad y)`, computed from the adjoint representation.
pub fn killing_form() -> [[i64; 3]; 3] {
    let ad = |x: Sl2Generator| {
        let mut m = [[0i64; 3]; 3];
        for y in GENS {
            if let Some((c, z)) = sl2_bracket(x, y) {
                m[gen_index(z)][gen_index(y)] = c;
            }
        }
        m
    };
    let mut k = [[0i64; 3]; 3];
    for x in GENS {
        for y in GENS {
            let (a, b) = (ad(x), ad(y));
            k[gen_index(x)][gen_index(y)] = (0..3).map(|i| (0..3).map(|j| a[i][j] * b[j][i]).sum::<i64>()).sum();
        }
    }
    k
}

/// `Σ_x x ⊗ parts[x] + central` with `x` over `e, h, f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub parts: [Vec<Rational>; 3],
    pub central: Vec<Rational>,
}

impl ExtElement {
    pub fn zero(cs: &CentralSpace) -> Self {
        let d = cs.algebra.dim();
        ExtElement { parts: std::array::from_fn(|_| vec![Rational::zero(); d]), central: vec![Rational::zero(); cs.quotient_dim()] }
    }

    pub fn current(cs: &CentralSpace, x: Sl2Generator, a: Vec<Rational>) -> Self {
        let mut z = Self::zero(cs);
        z.parts[gen_index(x)] = a;
        z
    }

    pub fn central(cs: &CentralSpace, c: Vec<Rational>) -> Self {
        let mut z = Self::zero(cs);
        z.central = c;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().chain(std::iter::once(&self.central)).all(|v| v.iter().all(Zero::is_zero))
    }

    pub fn add(&self, o: &ExtElement) -> ExtElement {
        let sum = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        ExtElement { parts: std::array::from_fn(|i| sum(&self.parts[i], &o.parts[i])), central: sum(&self.central, &o.central) }
    }
}

/// `[x⊗a + ⟨r,s⟩, y⊗b + ⟨u,v⟩] = [x,y]⊗ab + (x|y)⟨a,b⟩`.
pub fn extended_bracket(cs: &CentralSpace, a: &ExtElement, b: &ExtElement) -> ExtElement {
    let k = killing_form();
    let mut out = ExtElement::zero(cs);
    for x in GENS {
        let ax = &a.parts[gen_index(x)];
        if ax.iter().all(Zero::is_zero) {
            continue;
        }
        for y in GENS {
            let by = &b.parts[gen_index(y)];
            if by.iter().all(Zero::is_zero) {
                continue;
            }
            if let Some((c, z)) = sl2_bracket(x, y) {
                let ab = cs.algebra.mul(ax, by);
                for (o, v) in out.parts[gen_index(z)].iter_mut().zip(ab) {
                    *o += rat(c) * v;
                }
            }
            let kxy = k[gen_index(x)][gen_index(y)];
            if kxy != 0 {
                for (o, v) in out.central.iter_mut().zip(cs.pair(ax, by)) {
                    *o += rat(kxy) * v;
                }
            }
        }
    }
    out
}

/// A basis element of the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtBasis {
    Current(Sl2Generator, usize),
    Central(usize),
}

impl ExtBasis {
    pub fn element(&self, cs: &CentralSpace) -> ExtElement {
        match *self {
            ExtBasis::Current(x, i) => ExtElement::current(cs, x, cs.algebra.basis(i)),
            ExtBasis::Central(k) => ExtElement::central(cs, basis_vec(cs.quotient_dim(), Some(k))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: [ExtBasis; 3],
}

/// Jacobi identity on `samples` random basis triples. The algebra is not
/// validated first, so a corrupted table surfaces here as a failing triple.
pub fn verify_jacobi(a: &FiniteAlgebra, samples: usize, seed: u64) -> std::result::Result<(), JacobiFailure> {
    let cs = CentralSpace::build(a.clone());
    let mut basis: Vec<ExtBasis> =
        GENS.iter().flat_map(|&x| (0..a.dim()).map(move |i| ExtBasis::Current(x, i))).collect();
    basis.extend((0..cs.quotient_dim()).map(ExtBasis::Central));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let triple: [ExtBasis; 3] = std::array::from_fn(|_| basis[rng.gen_range(0..basis.len())]);
        let [x, y, z] = triple.map(|b| b.element(&cs));
        let j = extended_bracket(&cs, &x, &extended_bracket(&cs, &y, &z))
            .add(&extended_bracket(&cs, &y, &extended_bracket(&cs, &z, &x)))
            .add(&extended_bracket(&cs, &z, &extended_bracket(&cs, &x, &y)));
        if !j.is_zero() {
            return Err(JacobiFailure { triple });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheck {
    pub dim: usize,
    pub trace: Rational,
}

impl TraceCheck {
    pub fn passed(&self) -> bool {
        self.trace.is_zero()
    }
}

/// Basis tuples of `V_ν`, dense indices limited to `|i| ≤ window`.
pub fn weight_space_basis(d: &EvaluationDescriptor, nu: &Rational, window: i64) -> Result<Vec<Vec<i64>>> {
    if d.g() != (CartanType { letter: 'A', rank: 1 }) {
        return Err(Error::Unsupported(format!("explicit weight spaces over {}", d.g())));
    }
    if d.dense_indices().len() >= 2 {
        return Err(Error::InfiniteWeightSpace(format_rational(nu)));
    }
    let mut ranges = Vec::new();
    for f in d.factors() {
        let (_, _, top) = f.module.sl2_parameters()?;
        ranges.push(match top {
            Some(n) => (0, n),
            None => (-window, window),
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        d: &EvaluationDescriptor,
        ranges: &[(i64, i64)],
        nu: &Rational,
        acc: Rational,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        let k = cur.len();
        if k == ranges.len() {
            if &acc == nu {
                out.push(cur.clone());
            }
            return Ok(());
        }
        for i in ranges[k].0..=ranges[k].1 {
            let w = d.factors()[k].module.sl2_weight(i)?;
            cur.push(i);
            rec(d, ranges, nu, &acc + w, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(d, &ranges, nu, Rational::zero(), &mut cur, &mut out)?;
    Ok(out)
}

/// Trace of `(h⊗r)(h⊗s) − (h⊗s)(h⊗r)` on `V_ν`.
pub fn trace_identity_check(d: &EvaluationDescriptor, r: &Polynomial, s: &Polynomial, nu: &Rational, window: i64) -> Result<TraceCheck> {
    let basis = weight_space_basis(d, nu, window)?;
    let h = Sl2Generator::H;
    let mut trace = Rational::zero();
    for b in &basis {
        let v: FormalCombination = BTreeMap::from([(b.clone(), Rational::one())]);
        let rs = act(d, h, r, &act(d, h, s, &v)?)?;
        let sr = act(d, h, s, &act(d, h, r, &v)?)?;
        trace += rs.get(b).cloned().unwrap_or_else(Rational::zero) - sr.get(b).cloned().unwrap_or_else(Rational::zero);
    }
    Ok(TraceCheck { dim: basis.len(), trace })
}
