mod common;

use std::sync::Arc;

use common::{random_element, random_model, random_morphism, random_pair, rng, Shape, SMALL};
use liederiv::constructions::{cylinder, product_model, verify_homotopy};
use liederiv::der::{adjoint, der_bracket, der_differential, DerComplex, GenDerivation};
use liederiv::evsub::MapAnalysis;
use liederiv::lie::{bracket, FreeLie, Generator, LieElement};
use liederiv::linalg::{quotient_basis, RationalMatrix, SparseVec};
use liederiv::model::{DglModel, DglMorphism};
use liederiv::rel::{les_of_adjoint, les_of_morphism, les_of_push_forward};
use liederiv::Q;
use proptest::prelude::*;
use rand::Rng;

const TINY: Shape = Shape {
    max_gens: 3,
    max_gen_degree: 3,
    max_degree_one: 1,
    truncation: 6,
};

fn free_lie(seed: u64) -> (FreeLie, common::TestRng) {
    let mut r = rng(seed);
    let degs = common::random_degrees(&mut r, TINY);
    let gens = degs.iter().enumerate().map(|(i, &d)| Generator::new(format!("a{i}"), d)).collect();
    (FreeLie::new(gens, 9).unwrap(), r)
}

fn random_derivation(r: &mut common::TestRng, along: &Arc<DglMorphism>, n: i32) -> GenDerivation {
    let tgt = along.target();
    let values = along
        .source()
        .generators()
        .iter()
        .map(|g| {
            let d = g.degree + n;
            if d >= 1 && d <= tgt.max_degree() {
                random_element(r, tgt.lie(), d)
            } else {
                LieElement::zero(d)
            }
        })
        .collect();
    GenDerivation::new(along.clone(), n, values).unwrap()
}

fn random_matrix(r: &mut common::TestRng, rows: usize, cols: usize) -> RationalMatrix {
    let cols = (0..cols)
        .map(|_| {
            let mut entries = Vec::new();
            for i in 0..rows {
                if r.gen_bool(0.4) {
                    entries.push((i, Q::from_int(r.gen_range(-3..=3))));
                }
            }
            SparseVec::from_pairs(entries)
        })
        .collect();
    RationalMatrix::from_columns(rows, cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_antisymmetry_and_jacobi(seed in any::<u64>()) {
        let (lie, mut r) = free_lie(seed);
        let deg = |r: &mut common::TestRng| r.gen_range(1..=3);
        let (da, db, dc) = (deg(&mut r), deg(&mut r), deg(&mut r));
        let a = random_element(&mut r, &lie, da);
        let b = random_element(&mut r, &lie, db);
        let c = random_element(&mut r, &lie, dc);
        let s = Q::sign((da * db) as i64);
        prop_assert!(bracket(&a, &b).add_scaled(&s, &bracket(&b, &a)).is_zero());
        let jac = &(&bracket(&a, &bracket(&b, &c)) - &bracket(&bracket(&a, &b), &c))
            - &bracket(&b, &bracket(&a, &c)).scale(&s);
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn coordinates_are_linear(seed in any::<u64>()) {
        let (lie, mut r) = free_lie(seed);
        let n = r.gen_range(2..=6);
        let a = random_element(&mut r, &lie, n);
        let b = random_element(&mut r, &lie, n);
        let c = Q::new(r.gen_range(-5..=5), r.gen_range(1..=4));
        let lhs = lie.coordinates(&a.add_scaled(&c, &b)).unwrap();
        let rhs = lie.coordinates(&a).unwrap().add_scaled(&c, &lie.coordinates(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_rank_and_solve(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(0..7), r.gen_range(0..7));
        let m = random_matrix(&mut r, rows, cols);
        let k = m.kernel_basis();
        prop_assert!(k.iter().all(|v| m.apply(v).is_zero()));
        prop_assert_eq!(m.rank() + k.len(), cols);
        let x = SparseVec::from_pairs((0..cols).map(|i| (i, Q::from_int(r.gen_range(-2..=2)))));
        let b = m.apply(&x);
        let sol = m.solve(&b).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.apply(&sol.unwrap()), b);
    }

    #[test]
    fn quotient_dimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dim = r.gen_range(1..7);
        let nz = r.gen_range(0..5);
        let z = random_matrix(&mut r, dim, nz).columns().to_vec();
        let z = liederiv::linalg::independent_subset(&z).into_iter().map(|i| z[i].clone()).collect::<Vec<_>>();
        let nb = r.gen_range(0..4);
        let picks = random_matrix(&mut r, z.len(), nb);
        let b: Vec<_> = picks.columns().iter().map(|c| liederiv::linalg::combine(c, &z)).collect();
        let rank_b = RationalMatrix::from_columns(dim, b.clone()).rank();
        let q = quotient_basis(&z, &b).unwrap();
        prop_assert_eq!(q.len(), z.len() - rank_b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn derivation_differential_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_pair(&mut r, TINY);
        let der = DerComplex::new(psi.clone());
        prop_assert!(der.complex().is_complex());
        let n = r.gen_range(der.lo()..=der.hi());
        let theta = random_derivation(&mut r, &psi, n);
        prop_assert!(der_differential(&der_differential(&theta)).is_zero());
    }

    #[test]
    fn adjoint_is_a_chain_map(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_pair(&mut r, TINY);
        let k = psi.target();
        let top = k.max_degree() - psi.source().lie().max_generator_degree();
        prop_assume!(top >= 1);
        let m = r.gen_range(1..=top);
        let y = random_element(&mut r, k.lie(), m);
        prop_assert_eq!(der_differential(&adjoint(&psi, &y)), adjoint(&psi, &k.d(&y)));
        // perturbing a cycle by a boundary leaves its class alone
        let der = DerComplex::new(psi.clone());
        let cycles = k.complex().diff(m).kernel_basis();
        if m < top && !cycles.is_empty() {
            let z = k.element(m, &cycles[0]);
            let b = k.d(&random_element(&mut r, k.lie(), m + 1));
            let h = der.homology(m);
            let c0 = h.class_of(&der.coords(&adjoint(&psi, &z))).unwrap();
            let c1 = h.class_of(&der.coords(&adjoint(&psi, &(&z + &b)))).unwrap();
            prop_assert_eq!(c0, c1);
        }
    }

    #[test]
    fn adjoint_preserves_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_model(&mut r, "L", TINY);
        let id = Arc::new(DglMorphism::identity(l.clone()));
        let top = l.max_degree() - l.lie().max_generator_degree();
        prop_assume!(top >= 2);
        let dx = r.gen_range(1..top);
        let dy = r.gen_range(1..=top - dx);
        let x = random_element(&mut r, l.lie(), dx);
        let y = random_element(&mut r, l.lie(), dy);
        let lhs = adjoint(&id, &bracket(&x, &y));
        let rhs = der_bracket(&adjoint(&id, &x), &adjoint(&id, &y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn morphisms_induce_maps_on_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_pair(&mut r, SMALL);
        prop_assert!(psi.chain_map().commutes(psi.source().complex(), psi.target().complex(), 1));
    }

    #[test]
    fn long_exact_sequences_are_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_pair(&mut r, TINY);
        for report in [les_of_morphism(&psi), les_of_adjoint(&psi), les_of_push_forward(&psi)] {
            prop_assert!(report.exact());
        }
    }

    #[test]
    fn evaluation_subgroups_sit_in_the_center(seed in any::<u64>()) {
        let mut r = rng(seed);
        let psi = random_pair(&mut r, TINY);
        let a = MapAnalysis::new(psi).unwrap();
        for n in 2..=a.max_internal() + 1 {
            let gp = a.g_vs_p(n).unwrap();
            prop_assert!(gp.agree, "degree {}", n);
            let seq = a.g_sequence_degree(n).unwrap();
            prop_assert!(seq.composite_zero && seq.maps_into_subgroups);
        }
        for m in 1..=a.max_internal() {
            prop_assert_eq!(a.induced_map(m).compose(&a.h_ad_psi(m)), a.ad_on_homology(m));
        }
    }

    #[test]
    fn identity_evaluation_is_gottlieb(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_model(&mut r, "L", TINY);
        let a = MapAnalysis::identity(l).unwrap();
        for n in 2..=a.max_internal() + 1 {
            prop_assert_eq!(a.evaluation_subgroup(n).unwrap().basis, a.source_gottlieb(n).unwrap().basis);
        }
    }

    #[test]
    fn homology_ignores_generator_names(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_model(&mut r, "L", SMALL);
        let renamed_gens = l.generators().iter().map(|g| Generator::new(format!("{}_r", g.name), g.degree)).collect();
        let lie = Arc::new(FreeLie::new(renamed_gens, l.max_degree()).unwrap());
        let diff = l.diff_values().iter().map(|d| lie.apply_hom(d, &(0..lie.ngens()).map(|i| lie.gen(i)).collect::<Vec<_>>(), 0)).collect();
        let renamed = DglModel::new("R", lie, diff).unwrap();
        for n in 1..l.max_degree() {
            prop_assert_eq!(l.complex().homology(n).dim(), renamed.complex().homology(n).dim());
        }
    }

    #[test]
    fn product_models_add_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_model(&mut r, "X", TINY);
        let k = r.gen_range(1..=2);
        let spheres: Vec<i32> = (0..k).map(|_| r.gen_range(2..=4)).collect();
        let pm = product_model(x, &spheres).unwrap();
        prop_assert!(pm.result.is_valid());
        prop_assert!(pm.result.validate().minimal);
        for a in pm.additivity().unwrap() {
            prop_assert!(a.holds(), "{:?}", a);
        }
    }

    #[test]
    fn cylinder_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_model(&mut r, "X", Shape { truncation: 5, ..TINY });
        let cyl = cylinder(x.clone()).unwrap();
        let c = cyl.check(true).unwrap();
        prop_assert!(c.ok(), "{:?}", c.failures);
        let k = random_model(&mut r, "K", Shape { truncation: 5, ..TINY });
        let f = random_morphism(&mut r, &x, &k);
        let zeros: Vec<_> = x.generators().iter().map(|g| LieElement::zero(g.degree + 1)).collect();
        prop_assert!(verify_homotopy(&cyl, &k, &f, &zeros, &f).unwrap().holds);
    }
}

#[test]
fn random_inputs_are_not_degenerate() {
    let mut r = rng(7);
    let (mut nonzero_maps, mut nonzero_d) = (0, 0);
    for _ in 0..40 {
        let psi = random_pair(&mut r, SMALL);
        nonzero_maps += usize::from(psi.values().iter().any(|v| !v.is_zero()));
        nonzero_d += usize::from(psi.source().diff_values().iter().any(|v| !v.is_zero()));
    }
    assert!(nonzero_maps >= 10, "{nonzero_maps}");
    assert!(nonzero_d >= 10, "{nonzero_maps} {nonzero_d}");
}
