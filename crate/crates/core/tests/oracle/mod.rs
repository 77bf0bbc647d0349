//! Brute-force free Lie algebra dimensions: rank of left-normed brackets in the tensor algebra.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly = BTreeMap<Vec<u16>, BigRational>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend(v);
            *out.entry(w).or_insert_with(BigRational::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn bracket(a: &Poly, da: i32, b: &Poly, db: i32) -> Poly {
    let mut out = mul(a, b);
    let sign = if (da * db) % 2 == 0 { -BigRational::one() } else { BigRational::one() };
    for (w, c) in mul(b, a) {
        *out.entry(w).or_insert_with(BigRational::zero) += c * &sign;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Row echelon form keyed by leading word.
#[derive(Default)]
pub struct Rows(pub BTreeMap<Vec<u16>, Poly>);

impl Rows {
    pub fn insert(&mut self, mut p: Poly) -> bool {
        loop {
            let Some((lead, c)) = p.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
                return false;
            };
            match self.0.get(&lead) {
                Some(row) => {
                    let f = &c / &row[&lead];
                    for (w, x) in row {
                        *p.entry(w.clone()).or_insert_with(BigRational::zero) -= &f * x;
                    }
                    p.retain(|_, c| !c.is_zero());
                }
                None => {
                    self.0.insert(lead, p);
                    return true;
                }
            }
        }
    }
}

/// Dimensions of `L(V)_n` for `n = 1..=max` from left-normed brackets.
pub fn brute_force_dims(degrees: &[i32], max: i32) -> Vec<usize> {
    let mut bases: Vec<Vec<Poly>> = vec![Vec::new(); max as usize + 1];
    for n in 1..=max {
        let mut rows = Rows::default();
        let mut kept = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            if d == n {
                let p: Poly = [(vec![i as u16], BigRational::one())].into_iter().collect();
                if rows.insert(p.clone()) {
                    kept.push(p);
                }
            }
        }
        for (i, &d) in degrees.iter().enumerate() {
            let k = n - d;
            if k < 1 {
                continue;
            }
            let g: Poly = [(vec![i as u16], BigRational::one())].into_iter().collect();
            for b in bases[k as usize].clone() {
                let p = bracket(&b, k, &g, d);
                if rows.insert(p.clone()) {
                    kept.push(p);
                }
            }
        }
        bases[n as usize] = kept;
    }
    (1..=max).map(|n| bases[n as usize].len()).collect()
}
