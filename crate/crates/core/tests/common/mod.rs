//! Random models, maps and elements shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use liederiv::lie::{FreeLie, Generator, LieElement, Monomial};
use liederiv::linalg::{RationalMatrix, SparseVec};
use liederiv::model::{DglModel, DglMorphism};
use liederiv::Q;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random generator sets.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_gens: usize,
    pub max_gen_degree: i32,
    /// Caps the number of degree-1 generators; they dominate basis sizes.
    pub max_degree_one: usize,
    pub truncation: i32,
}

pub const SMALL: Shape = Shape {
    max_gens: 4,
    max_gen_degree: 4,
    max_degree_one: 1,
    truncation: 7,
};

pub fn random_degrees(rng: &mut TestRng, shape: Shape) -> Vec<i32> {
    let k = rng.gen_range(1..=shape.max_gens);
    let mut ones = 0;
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let d = rng.gen_range(1..=shape.max_gen_degree);
        if d == 1 {
            if ones == shape.max_degree_one {
                continue;
            }
            ones += 1;
        }
        out.push(d);
    }
    out.sort();
    out
}

fn small_coeff(rng: &mut TestRng) -> Q {
    let c = [-2, -1, 1, 1, 2, 3][rng.gen_range(0..6)];
    Q::from_int(c)
}

/// A random combination of the given vectors.
fn random_combination(rng: &mut TestRng, vs: &[SparseVec<usize>]) -> SparseVec<usize> {
    let mut out = SparseVec::default();
    for v in vs {
        if rng.gen_bool(0.6) {
            out = out.add_scaled(&small_coeff(rng), v);
        }
    }
    out
}

pub fn random_element(rng: &mut TestRng, lie: &FreeLie, n: i32) -> LieElement {
    let dim = lie.dim(n);
    let units: Vec<SparseVec<usize>> = (0..dim).map(SparseVec::unit).collect();
    lie.element(n, &random_combination(rng, &units))
}

/// A random minimal model: each `d(g)` is a random decomposable cycle built
/// from the generators of lower degree.
pub fn random_model(rng: &mut TestRng, name: &str, shape: Shape) -> Arc<DglModel> {
    let degrees = random_degrees(rng, shape);
    let gens: Vec<Generator> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Generator::new(format!("{}{}", name.to_lowercase(), i), d))
        .collect();
    let lie = Arc::new(FreeLie::new(gens, shape.truncation).unwrap());
    let mut diff: Vec<LieElement> = degrees.iter().map(|&d| LieElement::zero(d - 1)).collect();
    for i in 0..degrees.len() {
        let k = degrees[i] - 1;
        if k < 2 || rng.gen_bool(0.1) {
            continue;
        }
        let partial = DglModel::new(name, lie.clone(), diff.clone()).unwrap();
        let basis = lie.basis(k);
        let cols: Vec<usize> = (0..basis.dim())
            .filter(|&j| matches!(basis.monomials()[j], Monomial::Bracket(..)))
            .collect();
        let images: Vec<SparseVec<usize>> = cols
            .iter()
            .map(|&j| partial.coords(&partial.d(&basis.elements()[j])))
            .collect();
        let m = RationalMatrix::from_columns(lie.dim(k - 1), images);
        let kernel: Vec<SparseVec<usize>> = m
            .kernel_basis()
            .iter()
            .map(|v| v.map_keys(|c| cols[*c]))
            .collect();
        let z = random_combination(rng, &kernel);
        diff[i] = lie.element(k, &z);
    }
    Arc::new(DglModel::new(name, lie, diff).unwrap())
}

/// A random DGL map, built generator by generator; falls back to the zero map.
pub fn random_morphism(rng: &mut TestRng, src: &Arc<DglModel>, tgt: &Arc<DglModel>) -> DglMorphism {
    let gens = src.generators();
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| gens[i].degree);
    'attempt: for _ in 0..20 {
        let mut values: Vec<LieElement> = gens.iter().map(|g| LieElement::zero(g.degree)).collect();
        for &i in &order {
            let partial = DglMorphism::unchecked("f", src.clone(), tgt.clone(), values.clone()).unwrap();
            let t = partial.apply(&src.diff_values()[i]);
            let n = gens[i].degree;
            let Some(base) = tgt.solve_d(&t, None) else {
                continue 'attempt;
            };
            let c = tgt.complex();
            let cycles = c.diff(n).kernel_basis();
            let z = tgt.element(n, &random_combination(rng, &cycles));
            values[i] = (&base.with_degree(n) + &z).with_degree(n);
        }
        if let Ok(f) = DglMorphism::new("f", src.clone(), tgt.clone(), values) {
            return f;
        }
    }
    DglMorphism::zero(src.clone(), tgt.clone())
}

/// A random map between two random models.
pub fn random_pair(rng: &mut TestRng, shape: Shape) -> Arc<DglMorphism> {
    let src = random_model(rng, "L", shape);
    let tgt = random_model(rng, "K", shape);
    Arc::new(random_morphism(rng, &src, &tgt))
}
