//! The dense `sl₂` family `W(μ, τ₀)`: basis `v_i`, `i ∈ Z`, with
//! `h v_i = (μ+2i) v_i`, `f v_i = v_{i−1}` and `e v_i = τ_i v_{i+1}`, where
//! `τ_i = τ₀ − iμ − i(i+1)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::Sl2Generator;
use crate::rational::{frac, rat, rational_sqrt, Rational};

pub fn tau(mu: &Rational, tau0: &Rational, i: i64) -> Rational {
    tau0 - rat(i) * mu - rat(i * (i + 1))
}

/// Coefficient and target index of `x v_i`.
pub fn dense_action(mu: &Rational, tau0: &Rational, x: Sl2Generator, i: i64) -> (Rational, i64) {
    match x {
        Sl2Generator::H => (mu + rat(2 * i), i),
        Sl2Generator::E => (tau(mu, tau0, i), i + 1),
        Sl2Generator::F => (Rational::one(), i - 1),
    }
}

/// `e` is injective, i.e. `τ_i ≠ 0` for every integer `i`. The zeros of
/// `τ_i` are the roots of `i² + (1+μ)i − τ₀`.
pub fn is_simple_dense(mu: &Rational, tau0: &Rational) -> bool {
    let b = Rational::one() + mu;
    let disc = &b * &b + rat(4) * tau0;
    let Some(r) = rational_sqrt(&disc) else {
        return true;
    };
    let two = rat(2);
    let roots = [(-&b + &r) / &two, (-&b - &r) / &two];
    !roots.iter().any(|x| x.is_integer())
}

/// Scalar of the Casimir `ef + fe + h²/2`: `2τ₀ + μ + μ²/2`.
pub fn casimir_invariant(mu: &Rational, tau0: &Rational) -> Rational {
    rat(2) * tau0 + mu + mu * mu * frac(1, 2)
}

type Vector = BTreeMap<i64, Rational>;

fn apply(mu: &Rational, tau0: &Rational, x: Sl2Generator, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (&i, c) in v {
        let (k, j) = dense_action(mu, tau0, x, i);
        *out.entry(j).or_insert_with(Rational::zero) += c * k;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn combine(a: &Vector, b: &Vector, scale_b: &Rational) -> Vector {
    let mut out = a.clone();
    for (&i, c) in b {
        *out.entry(i).or_insert_with(Rational::zero) += c * scale_b;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2RelationFailure {
    pub relation: &'static str,
    pub index: i64,
}

/// Checks `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h` on `v_i`, `|i| ≤ window`.
pub fn verify_sl2_relations(mu: &Rational, tau0: &Rational, window: i64) -> Result<(), Sl2RelationFailure> {
    use Sl2Generator::*;
    let minus_one = -Rational::one();
    let bracket = |x, y, v: &Vector| {
        let xy = apply(mu, tau0, x, &apply(mu, tau0, y, v));
        let yx = apply(mu, tau0, y, &apply(mu, tau0, x, v));
        combine(&xy, &yx, &minus_one)
    };
    for i in -window..=window {
        let v = Vector::from([(i, Rational::one())]);
        let checks: [(&'static str, Vector, Vector); 3] = [
            ("[h,e]=2e", bracket(H, E, &v), combine(&Vector::new(), &apply(mu, tau0, E, &v), &rat(2))),
            ("[h,f]=-2f", bracket(H, F, &v), combine(&Vector::new(), &apply(mu, tau0, F, &v), &rat(-2))),
            ("[e,f]=h", bracket(E, F, &v), apply(mu, tau0, H, &v)),
        ];
        for (relation, lhs, rhs) in checks {
            if lhs != rhs {
                return Err(Sl2RelationFailure { relation, index: i });
            }
        }
    }
    Ok(())
}
