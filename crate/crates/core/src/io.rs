//! JSON formats for descriptors, algebras and results.
//!
//! Rationals are written as `"p/q"` strings; plain JSON integers are also
//! accepted on input.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::admissible::AdmissibilityVerdict;
use crate::classify::{IsoClassLabel, PsiMap};
use crate::error::Result;
use crate::evaluation::{CoordinateRing, EvaluationDescriptor};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::rootsys::CartanType;
use crate::ucext::FiniteAlgebra;
use crate::weightmod::{MultiplicityFunction, WeightModuleDescriptor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Str(String),
    Int(i64),
}

impl RationalSpec {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalSpec::Str(s) => parse_rational(s),
            RationalSpec::Int(n) => Ok(Rational::from_integer((*n).into())),
        }
    }

    pub fn of(r: &Rational) -> Self {
        RationalSpec::Str(format_rational(r))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarsSpec {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: VarsSpec,
    #[serde(default)]
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleSpec {
    Dense { mu: RationalSpec, tau0: RationalSpec },
    Finite { highest: Vec<i64> },
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub point: Vec<RationalSpec>,
    pub module: ModuleSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub ring: RingSpec,
    pub g: String,
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
}

impl DescriptorFile {
    pub fn build(&self) -> Result<EvaluationDescriptor> {
        let names = match &self.ring.vars {
            VarsSpec::Count(n) => CoordinateRing::default_names(*n),
            VarsSpec::Names(v) => v.clone(),
        };
        let ideal: Vec<&str> = self.ring.ideal.iter().map(String::as_str).collect();
        let ring = CoordinateRing::new(names, &ideal)?;
        let g: CartanType = self.g.parse()?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let point = f.point.iter().map(RationalSpec::value).collect::<Result<Vec<_>>>()?;
            let module = match &f.module {
                ModuleSpec::Dense { mu, tau0 } => WeightModuleDescriptor::dense_unchecked(mu.value()?, tau0.value()?),
                ModuleSpec::Finite { highest } => WeightModuleDescriptor::finite(g, highest.clone())?,
                ModuleSpec::Trivial => WeightModuleDescriptor::Trivial,
            };
            factors.push((point, module));
        }
        EvaluationDescriptor::new(ring, g, factors)
    }

    pub fn of(d: &EvaluationDescriptor) -> Self {
        let ring = d.ring();
        DescriptorFile {
            ring: RingSpec {
                vars: VarsSpec::Names(ring.names().to_vec()),
                ideal: ring.ideal().iter().map(|p| ring.format(p)).collect(),
            },
            g: d.g().to_string(),
            factors: d
                .factors()
                .iter()
                .map(|f| FactorSpec {
                    point: f.point.coords().iter().map(RationalSpec::of).collect(),
                    module: module_spec(&f.module),
                })
                .collect(),
        }
    }
}

fn module_spec(m: &WeightModuleDescriptor) -> ModuleSpec {
    match m {
        WeightModuleDescriptor::Trivial => ModuleSpec::Trivial,
        WeightModuleDescriptor::FiniteDim { highest, .. } => ModuleSpec::Finite { highest: highest.clone() },
        WeightModuleDescriptor::DenseSL2 { mu, tau0 } => {
            ModuleSpec::Dense { mu: RationalSpec::of(mu), tau0: RationalSpec::of(tau0) }
        }
    }
}

pub fn parse_descriptor(s: &str) -> Result<EvaluationDescriptor> {
    serde_json::from_str::<DescriptorFile>(s)?.build()
}

pub fn load_descriptor(path: impl AsRef<Path>) -> Result<EvaluationDescriptor> {
    parse_descriptor(&std::fs::read_to_string(path)?)
}

pub fn descriptor_json(d: &EvaluationDescriptor) -> Value {
    serde_json::to_value(DescriptorFile::of(d)).expect("descriptor serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub mult_table: Vec<Vec<Vec<RationalSpec>>>,
    pub unit: Vec<RationalSpec>,
}

impl AlgebraFile {
    pub fn build(&self) -> Result<FiniteAlgebra> {
        let vec = |v: &[RationalSpec]| v.iter().map(RationalSpec::value).collect::<Result<Vec<_>>>();
        let table = self
            .mult_table
            .iter()
            .map(|row| row.iter().map(|v| vec(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(self.basis.clone(), table, vec(&self.unit)?)
    }

    pub fn of(a: &FiniteAlgebra) -> Self {
        let vec = |v: &[Rational]| v.iter().map(RationalSpec::of).collect::<Vec<_>>();
        AlgebraFile {
            basis: a.labels().to_vec(),
            mult_table: a.table().iter().map(|row| row.iter().map(|v| vec(v)).collect()).collect(),
            unit: vec(a.unit()),
        }
    }
}

pub fn parse_algebra(s: &str) -> Result<FiniteAlgebra> {
    serde_json::from_str::<AlgebraFile>(s)?.build()
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<FiniteAlgebra> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

fn rationals(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

pub fn psi_json(psi: &PsiMap) -> Value {
    let support: Vec<Value> = psi
        .support()
        .iter()
        .map(|(p, l)| {
            let label = match l {
                IsoClassLabel::FiniteDim(h) => json!({"kind": "finite", "highest": h}),
                IsoClassLabel::DenseClass { coset, casimir } => {
                    json!({"kind": "dense", "coset": format_rational(coset), "casimir": format_rational(casimir)})
                }
            };
            json!({"point": rationals(p.coords()), "label": label})
        })
        .collect();
    json!({ "support": support })
}

pub fn verdict_json(v: &AdmissibilityVerdict) -> Value {
    match v {
        AdmissibilityVerdict::Admissible { bound } => json!({"verdict": "admissible", "bound": bound}),
        AdmissibilityVerdict::NotAdmissible { reason, witness } => json!({
            "verdict": "not-admissible",
            "reason": reason.to_string(),
            "checked_up_to": witness.checked_up_to,
            "witness": witness.rows.iter().map(|r| json!({
                "n": r.n,
                "weight": rationals(&r.weight),
                "lower_bound": r.lower_bound,
                "infinite": r.infinite,
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn multiplicities_json(m: &MultiplicityFunction) -> Value {
    let rows: Vec<Value> = m.table().iter().map(|(w, k)| json!({"weight": rationals(w), "mult": k})).collect();
    json!({"infinite": m.is_infinite(), "window": m.window(), "weights": rows})
}
