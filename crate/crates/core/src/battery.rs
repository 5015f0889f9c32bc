//! A deterministic battery of evaluation descriptors for cross-checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evaluation::{CoordinateRing, EvaluationDescriptor};
use crate::rational::{frac, rat, Rational};
use crate::rootsys::CartanType;
use crate::weightmod::WeightModuleDescriptor;

/// Simple dense modules used across the battery.
pub fn dense_pool() -> Vec<WeightModuleDescriptor> {
    [(0, 1, -1, 4), (1, 1, -2, 1), (2, 1, -9, 4), (1, 2, 2, 1), (3, 1, -2, 1), (-1, 3, 4, 1)]
        .iter()
        .map(|&(p, q, a, b)| WeightModuleDescriptor::dense(frac(p, q), frac(a, b)).expect("pool module is simple"))
        .collect()
}

fn a1() -> CartanType {
    CartanType { letter: 'A', rank: 1 }
}

fn rings() -> Vec<(CoordinateRing, Vec<Vec<Rational>>)> {
    let line = CoordinateRing::affine(1);
    let line_pts = (0..4).map(|x| vec![rat(x)]).collect();
    let laurent = CoordinateRing::new(CoordinateRing::default_names(2), &["t*u-1"]).expect("ring");
    let laurent_pts = vec![
        vec![rat(1), rat(1)],
        vec![rat(2), frac(1, 2)],
        vec![rat(-1), rat(-1)],
        vec![frac(1, 2), rat(2)],
    ];
    vec![(line, line_pts), (laurent, laurent_pts)]
}

/// `sl₂` descriptors with 0–3 factors mixing trivial, finite and dense
/// modules, `count` of them drawn from `seed`, after a fixed prefix.
pub fn sl2_battery(seed: u64, count: usize) -> Vec<EvaluationDescriptor> {
    let dense = dense_pool();
    let fin = |n| WeightModuleDescriptor::sl2(n).expect("sl2 module");
    let line = CoordinateRing::affine(1);
    let at = |f: Vec<(i64, WeightModuleDescriptor)>| {
        let f = f.into_iter().map(|(p, m)| (vec![rat(p)], m)).collect();
        EvaluationDescriptor::new(line.clone(), a1(), f).expect("battery descriptor")
    };
    let mut out = vec![
        at(vec![]),
        at(vec![(0, fin(2)), (1, dense[0].clone())]),
        at(vec![(0, dense[0].clone()), (1, dense[0].clone())]),
        at(vec![(0, fin(2)), (1, fin(2))]),
        at(vec![(0, fin(1)), (1, fin(1))]),
        at(vec![(0, dense[1].clone()), (1, dense[4].clone())]),
        at(vec![(0, WeightModuleDescriptor::Trivial), (1, fin(3))]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = rings();
    for k in 0..count {
        let (ring, pts) = &rings[rng.gen_range(0..rings.len())];
        let n = k % 4;
        let chosen: Vec<&Vec<Rational>> = pts.choose_multiple(&mut rng, n).collect();
        let factors = chosen
            .into_iter()
            .map(|p| {
                let m = match rng.gen_range(0..10) {
                    0 => WeightModuleDescriptor::Trivial,
                    1..=5 => fin(rng.gen_range(1..=4)),
                    _ => dense.choose(&mut rng).expect("pool").clone(),
                };
                (p.clone(), m)
            })
            .collect();
        out.push(EvaluationDescriptor::new(ring.clone(), a1(), factors).expect("battery descriptor"));
    }
    out
}

/// All-finite descriptors in higher rank with total dimension at most
/// `max_dim`, for systems of rank `≤ max_rank`.
pub fn finite_battery(max_rank: usize, max_dim: u128) -> Vec<EvaluationDescriptor> {
    let specs: [(&str, &[&[i64]]); 4] = [
        ("A2", &[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]),
        ("B2", &[&[1, 0], &[0, 1], &[1, 1]]),
        ("G2", &[&[1, 0], &[0, 1]]),
        ("A3", &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]]),
    ];
    let line = CoordinateRing::affine(1);
    let mut out = Vec::new();
    for (g, highs) in specs {
        let g: CartanType = g.parse().expect("type");
        if g.rank > max_rank {
            continue;
        }
        let mods: Vec<WeightModuleDescriptor> =
            highs.iter().map(|h| WeightModuleDescriptor::finite(g, h.to_vec()).expect("module")).collect();
        let mut combos: Vec<Vec<usize>> = (0..mods.len()).map(|i| vec![i]).collect();
        for i in 0..mods.len() {
            for j in i..mods.len() {
                combos.push(vec![i, j]);
                for k in j..mods.len() {
                    combos.push(vec![i, j, k]);
                }
            }
        }
        for c in combos {
            let f = c.iter().enumerate().map(|(p, &i)| (vec![rat(p as i64)], mods[i].clone())).collect();
            let d = EvaluationDescriptor::new(line.clone(), g, f).expect("descriptor");
            if d.dimension().expect("dimension").is_some_and(|n| n <= max_dim) {
                out.push(d);
            }
        }
    }
    out
}
