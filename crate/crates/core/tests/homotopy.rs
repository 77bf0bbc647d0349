//! A map out of a product model that is homotopic to the projection: on `w'` it
//! is the boundary `D(Theta)` of a derivation, and `-Theta` is the homotopy.

use std::sync::Arc;

use liederiv::constructions::{cylinder, product_model, verify_homotopy, ProductModel};
use liederiv::der::{der_differential, GenDerivation};
use liederiv::lie::{Generator, LieElement};
use liederiv::model::{DglModel, DglMorphism};

fn cp2(n: i32) -> Arc<DglModel> {
    let gens = vec![Generator::new("x1", 1), Generator::new("x3", 3)];
    Arc::new(DglModel::from_text("CP2", gens, n, &[("x3", "[x1,x1]")]).unwrap())
}

struct Setup {
    pm: ProductModel,
    x: Arc<DglModel>,
    big_theta: GenDerivation,
    start: DglMorphism,
    end: DglMorphism,
}

fn setup(theta_values: [&str; 2]) -> Setup {
    let x = cp2(8);
    let id = Arc::new(DglMorphism::identity(x.clone()));
    let values = theta_values.iter().map(|s| x.parse(s).unwrap()).collect();
    let big_theta = GenDerivation::new(id, 3, values).unwrap();
    let theta_a = der_differential(&big_theta);
    assert_eq!(theta_a.degree(), 2);
    let pm = product_model(x.clone(), &[2]).unwrap();
    let p = &pm.result;
    // L_A: w -> w, v -> 0, w' -> theta_A(w)
    let image = |name: &str, projection: bool| -> LieElement {
        let g = p.generators().iter().find(|g| g.name == name).unwrap();
        match name.strip_suffix('\'') {
            Some(w) if !projection => theta_a.apply(&x.gen(w)).with_degree(g.degree),
            Some(_) => LieElement::zero(g.degree),
            None if name == "v" => LieElement::zero(g.degree),
            None => x.gen(name),
        }
    };
    let names: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    let start_values = names.iter().map(|n| image(n, false)).collect();
    let end_values = names.iter().map(|n| image(n, true)).collect();
    let start = DglMorphism::new("L_A", p.clone(), x.clone(), start_values).unwrap();
    let end = DglMorphism::new("f p2", p.clone(), x.clone(), end_values).unwrap();
    Setup {
        pm,
        x,
        big_theta,
        start,
        end,
    }
}

/// `s(w') -> sign * Theta(w)`, zero elsewhere.
fn svalues(s: &Setup, sign: i64) -> Vec<LieElement> {
    s.pm
        .result
        .generators()
        .iter()
        .map(|g| match g.name.strip_suffix('\'') {
            Some(w) => {
                let t = s.big_theta.apply(&s.x.gen(w));
                t.scale(&liederiv::Q::from_int(sign)).with_degree(g.degree + 1)
            }
            None => LieElement::zero(g.degree + 1),
        })
        .collect()
}

#[test]
fn minus_theta_carries_the_map_to_the_projection() {
    let s = setup(["[x1,x3]", "[x3,x3]"]);
    assert!(s.start.values().iter().any(|v| !v.is_zero()), "theta_A vanished");
    let cyl = cylinder(s.pm.result.clone()).unwrap();
    let v = verify_homotopy(&cyl, &s.x, &s.start, &svalues(&s, -1), &s.end).unwrap();
    assert!(v.holds, "{:?}", v.mismatches);
}

#[test]
fn plus_theta_doubles_the_error() {
    let s = setup(["[x1,x3]", "[x3,x3]"]);
    let cyl = cylinder(s.pm.result.clone()).unwrap();
    let v = verify_homotopy(&cyl, &s.x, &s.start, &svalues(&s, 1), &s.end).unwrap();
    assert!(!v.holds);
    // what remains on w' is 2 theta_A(w)
    for (g, got, _) in &v.mismatches {
        let w = g.strip_suffix('\'').expect("only the primed generators disagree");
        let theta_a = s.start.values()[s.pm.result.lie().index_of(g).unwrap()].clone();
        let twice = theta_a.scale(&liederiv::Q::from_int(2));
        assert_eq!(got, &s.x.render(&twice), "{w}");
    }
    assert!(!v.mismatches.is_empty());
}

#[test]
fn zero_homotopy_is_enough_when_theta_vanishes() {
    let s = setup(["0", "0"]);
    let cyl = cylinder(s.pm.result.clone()).unwrap();
    let zeros: Vec<_> = s.pm.result.generators().iter().map(|g| LieElement::zero(g.degree + 1)).collect();
    assert!(verify_homotopy(&cyl, &s.x, &s.start, &zeros, &s.end).unwrap().holds);
}
