//! Product models `(wedge of spheres) x X`, the linearization criterion for
//! quasi-isomorphisms, and the cylinder object `L(V)_I` with its homotopy check.

use std::sync::Arc;

use crate::complex::{ChainMap, GradedComplex};
use crate::der::GenDerivation;
use crate::lie::{bracket, FreeLie, Generator, LieElement};
use crate::linalg::{RationalMatrix, SparseVec};
use crate::model::{extend_derivation, DglModel, DglMorphism, ModelError};
use crate::rational::Q;

/// `L(W, V, W_1, ..., W_k; ∂)` built from `X = L(W; d_X)` and spheres `S^{n_1}, ..., S^{n_k}`.
#[derive(Debug)]
pub struct ProductModel {
    pub base: Arc<DglModel>,
    pub spheres: Vec<i32>,
    pub result: Arc<DglModel>,
    /// The inclusion `L(W) -> result`.
    pub lambda: Arc<DglMorphism>,
    /// `S_i`, the `lambda`-derivation of degree `n_i` extending `w -> w'_i`.
    pub s: Vec<GenDerivation>,
    /// Suspended generators above the truncation degree, left out.
    pub dropped: Vec<String>,
}

/// `L(v_1, ..., v_k; 0)` with `|v_i| = n_i - 1`.
pub fn sphere_wedge_model(spheres: &[i32], max_degree: i32) -> Result<DglModel, ModelError> {
    let gens = sphere_generators(spheres);
    let lie = Arc::new(FreeLie::new(gens, max_degree)?);
    Ok(DglModel::free("spheres", lie))
}

fn sphere_generators(spheres: &[i32]) -> Vec<Generator> {
    spheres
        .iter()
        .enumerate()
        .map(|(i, &n)| Generator::new(sphere_name("v", i, spheres.len()), n - 1))
        .collect()
}

fn sphere_name(base: &str, i: usize, k: usize) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

pub fn product_model(base: Arc<DglModel>, spheres: &[i32]) -> Result<ProductModel, ModelError> {
    base.require_valid()?;
    if let Some(&n) = spheres.iter().find(|&&n| n < 2) {
        return Err(ModelError::Precondition(format!("sphere dimension {n} is below 2")));
    }
    let big_n = base.max_degree();
    if let Some(&n) = spheres.iter().find(|&&n| n - 1 > big_n) {
        return Err(ModelError::Precondition(format!(
            "sphere dimension {n} does not fit under the truncation degree {big_n}"
        )));
    }
    let k = spheres.len();
    let w = base.generators();
    let mut gens: Vec<Generator> = w.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
    gens.extend(sphere_generators(spheres));
    // suspended[i][j]: index of w'_j for sphere i
    let mut suspended = vec![vec![None; w.len()]; k];
    let mut dropped = Vec::new();
    for (i, &n) in spheres.iter().enumerate() {
        for (j, g) in w.iter().enumerate() {
            let name = sphere_name(&format!("{}'", g.name), i, k);
            if g.degree + n > big_n {
                dropped.push(name);
            } else {
                suspended[i][j] = Some(gens.len());
                gens.push(Generator::new(name, g.degree + n));
            }
        }
    }
    let lie = Arc::new(FreeLie::new(gens, big_n)?);
    let s_values: Vec<Vec<LieElement>> = spheres
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            w.iter()
                .enumerate()
                .map(|(j, g)| match suspended[i][j] {
                    Some(idx) => lie.gen(idx),
                    None => LieElement::zero(g.degree + n),
                })
                .collect()
        })
        .collect();
    let mut diff: Vec<LieElement> = Vec::with_capacity(lie.ngens());
    // W letters keep their indices, so d_X transfers verbatim
    for v in base.diff_values() {
        diff.push(LieElement::from_poly(v.degree(), v.terms().clone()));
    }
    for &n in spheres {
        diff.push(LieElement::zero(n - 2));
    }
    for (i, &n) in spheres.iter().enumerate() {
        let s_i = extend_derivation(base.lie(), &s_values[i], n, None)?;
        let v_i = lie.gen(w.len() + i);
        for (j, g) in w.iter().enumerate() {
            if suspended[i][j].is_none() {
                continue;
            }
            let wj = lie.gen(j);
            let d = bracket(&v_i, &wj).add_scaled(&Q::sign(n as i64), &s_i.apply(&base.diff_values()[j]));
            diff.push(d.with_degree(g.degree + n - 1));
        }
    }
    let name = format!("{}x{}", sphere_names(spheres), base.name());
    let result = Arc::new(DglModel::new(name, lie.clone(), diff)?);
    result.require_valid()?;
    let lambda = Arc::new(DglMorphism::new(
        "lambda",
        base.clone(),
        result.clone(),
        (0..w.len()).map(|j| lie.gen(j)).collect(),
    )?);
    let s = spheres
        .iter()
        .zip(s_values)
        .map(|(&n, vals)| GenDerivation::new(lambda.clone(), n, vals))
        .collect::<Result<_, _>>()?;
    Ok(ProductModel {
        base,
        spheres: spheres.to_vec(),
        result,
        lambda,
        s,
        dropped,
    })
}

fn sphere_names(spheres: &[i32]) -> String {
    spheres.iter().map(|n| format!("S{n}")).collect::<Vec<_>>().join("v")
}

/// One degree of the additivity check `H(result) = L(V) + H(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityDegree {
    pub degree: i32,
    pub product: usize,
    pub spheres: usize,
    pub base: usize,
}

impl AdditivityDegree {
    pub fn holds(&self) -> bool {
        self.product == self.spheres + self.base
    }
}

impl ProductModel {
    /// Compares homology dimensions at every trusted degree.
    pub fn additivity(&self) -> Result<Vec<AdditivityDegree>, ModelError> {
        let n_max = self.base.max_degree();
        let wedge = sphere_wedge_model(&self.spheres, n_max)?;
        Ok((1..n_max)
            .map(|n| AdditivityDegree {
                degree: n,
                product: self.result.complex().homology(n).dim(),
                spheres: wedge.lie().dim(n),
                base: self.base.complex().homology(n).dim(),
            })
            .collect())
    }
}

/// The linear part `phi_0: (V, d_0) -> (W, d_0)` of a map of free DGLs.
#[derive(Debug)]
pub struct Linearization {
    pub source: GradedComplex,
    pub target: GradedComplex,
    pub map: ChainMap,
    /// `H(phi_0)` is an isomorphism in every degree below the truncation degree.
    pub linear_quasi_iso: bool,
    /// `H(phi)` is an isomorphism in every degree below the truncation degree.
    pub full_quasi_iso: bool,
    /// First degree where the linear test fails.
    pub linear_failure: Option<i32>,
    pub full_failure: Option<i32>,
}

impl Linearization {
    pub fn agree(&self) -> bool {
        self.linear_quasi_iso == self.full_quasi_iso
    }
}

/// Generators of each degree `1..=N`, as positions within their degree.
fn degree_slots(model: &DglModel) -> Vec<(usize, usize)> {
    let mut seen = vec![0usize; model.max_degree().max(1) as usize + 1];
    model
        .generators()
        .iter()
        .map(|g| {
            let d = g.degree as usize;
            seen[d] += 1;
            (d, seen[d] - 1)
        })
        .collect()
}

fn linear_coords(e: &LieElement, slots: &[(usize, usize)]) -> SparseVec<usize> {
    SparseVec::from_pairs(
        e.terms()
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (slots[w[0] as usize].1, c.clone())),
    )
}

fn linear_complex(model: &DglModel, slots: &[(usize, usize)]) -> GradedComplex {
    let n_max = model.max_degree().max(1);
    let count = |n: i32| slots.iter().filter(|s| s.0 == n as usize).count();
    let dims: Vec<usize> = (1..=n_max).map(count).collect();
    let diffs = (1..=n_max)
        .map(|n| {
            let rows = if n == 1 { 0 } else { count(n - 1) };
            let cols = model
                .generators()
                .iter()
                .zip(model.diff_values())
                .filter(|(g, _)| g.degree == n)
                .map(|(_, v)| if n == 1 { SparseVec::default() } else { linear_coords(v, slots) })
                .collect();
            RationalMatrix::from_columns(rows, cols)
        })
        .collect();
    GradedComplex::new(1, dims, diffs)
}

fn is_iso(m: &RationalMatrix) -> bool {
    m.nrows() == m.ncols() && m.rank() == m.ncols()
}

pub fn linearization(phi: &DglMorphism) -> Linearization {
    let (src, tgt) = (phi.source(), phi.target());
    let ss = degree_slots(src);
    let ts = degree_slots(tgt);
    let source = linear_complex(src, &ss);
    let target = linear_complex(tgt, &ts);
    let n_max = src.max_degree().max(1);
    let mats = (1..=n_max)
        .map(|n| {
            let cols = src
                .generators()
                .iter()
                .zip(phi.values())
                .filter(|(g, _)| g.degree == n)
                .map(|(_, v)| linear_coords(v, &ts))
                .collect();
            RationalMatrix::from_columns(target.dim(n), cols)
        })
        .collect();
    let map = ChainMap::new(0, 1, mats);
    let linear_failure = (1..n_max).find(|&n| !is_iso(&map.induced(&source, &target, n)));
    let full_failure = (1..n_max).find(|&n| !is_iso(&phi.homology_map(n)));
    Linearization {
        source,
        target,
        map,
        linear_quasi_iso: linear_failure.is_none(),
        full_quasi_iso: full_failure.is_none(),
        linear_failure,
        full_failure,
    }
}

/// `L(V)_I = L(V, sV, V̂; D)` with `D(sv) = v̂`, `D(v̂) = 0`.
///
/// Within truncation degree `N`, `sv` exists only for `|v| < N`; a top-degree
/// `v` keeps its `v̂` and `sigma(v) = 0`.
#[derive(Debug)]
pub struct CylinderModel {
    pub source: Arc<DglModel>,
    pub result: Arc<DglModel>,
    /// Degree-1 derivation with `sigma(v) = sv`, zero on `sV` and `V̂`.
    pub sigma: GenDerivation,
    /// `[D, sigma]` on generators: `theta(v) = v̂ + sigma(dv)`.
    pub theta: GenDerivation,
    pub lambda0: Arc<DglMorphism>,
    pub lambda1: Arc<DglMorphism>,
    pub p: Arc<DglMorphism>,
    /// Number of exponential terms summed past the constant one.
    pub exp_cap: usize,
    /// Index of `sv` in the cylinder, when present.
    pub s_index: Vec<Option<usize>>,
    pub hat_index: Vec<usize>,
}

pub fn cylinder(source: Arc<DglModel>) -> Result<CylinderModel, ModelError> {
    source.require_valid()?;
    let big_n = source.max_degree();
    let v = source.generators();
    let mut gens: Vec<Generator> = v.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
    let mut s_index = Vec::with_capacity(v.len());
    for g in v {
        if g.degree < big_n {
            s_index.push(Some(gens.len()));
            gens.push(Generator::new(format!("s_{}", g.name), g.degree + 1));
        } else {
            s_index.push(None);
        }
    }
    let mut hat_index = Vec::with_capacity(v.len());
    for g in v {
        hat_index.push(gens.len());
        gens.push(Generator::new(format!("{}_hat", g.name), g.degree));
    }
    let lie = Arc::new(FreeLie::new(gens, big_n)?);
    let mut diff: Vec<LieElement> = source
        .diff_values()
        .iter()
        .map(|d| LieElement::from_poly(d.degree(), d.terms().clone()))
        .collect();
    for (i, s) in s_index.iter().enumerate() {
        if s.is_some() {
            diff.push(lie.gen(hat_index[i]));
        }
    }
    for g in v {
        diff.push(LieElement::zero(g.degree - 1));
    }
    let result = Arc::new(DglModel::new(format!("{}_I", source.name()), lie.clone(), diff)?);
    let id = Arc::new(DglMorphism::identity(result.clone()));
    let sigma_values: Vec<LieElement> = result
        .generators()
        .iter()
        .enumerate()
        .map(|(j, g)| match s_index.get(j) {
            Some(Some(s)) => lie.gen(*s),
            _ => LieElement::zero(g.degree + 1),
        })
        .collect();
    let sigma = GenDerivation::new(id.clone(), 1, sigma_values)?;
    let mut theta_values: Vec<LieElement> =
        result.generators().iter().map(|g| LieElement::zero(g.degree)).collect();
    for (i, g) in v.iter().enumerate() {
        let dv = &result.diff_values()[i];
        theta_values[i] = lie.gen(hat_index[i]).add_scaled(&Q::one(), &sigma.apply(dv).with_degree(g.degree));
    }
    let theta = GenDerivation::new(id, 0, theta_values)?;
    let min_deg = v.iter().map(|g| g.degree).min().unwrap_or(1).max(1);
    let exp_cap = (big_n / min_deg) as usize + 1;
    let lambda0 = Arc::new(DglMorphism::new(
        "lambda0",
        source.clone(),
        result.clone(),
        (0..v.len()).map(|i| lie.gen(i)).collect(),
    )?);
    let mut cyl = CylinderModel {
        source: source.clone(),
        result: result.clone(),
        sigma,
        theta,
        lambda1: lambda0.clone(),
        lambda0,
        p: Arc::new(DglMorphism::zero(source.clone(), source.clone())),
        exp_cap,
        s_index,
        hat_index,
    };
    let l1 = (0..v.len())
        .map(|i| cyl.exp(&lie.gen(i), false))
        .collect::<Result<Vec<_>, _>>()?;
    cyl.lambda1 = Arc::new(DglMorphism::unchecked("lambda1", source.clone(), result.clone(), l1)?);
    let p_values = result
        .generators()
        .iter()
        .enumerate()
        .map(|(j, g)| if j < v.len() { source.lie().gen(j) } else { LieElement::zero(g.degree) })
        .collect();
    cyl.p = Arc::new(DglMorphism::new("p", result, source, p_values)?);
    Ok(cyl)
}

impl CylinderModel {
    /// `exp(theta)(e)` or, with `negate`, `exp(-theta)(e)`.
    pub fn exp(&self, e: &LieElement, negate: bool) -> Result<LieElement, ModelError> {
        let mut sum = e.clone();
        let mut term = e.clone();
        for r in 1..=self.exp_cap {
            let c = Q::new(if negate { -1 } else { 1 }, r as i64);
            term = self.theta.apply(&term).scale(&c);
            if term.is_zero() {
                return Ok(sum);
            }
            sum = &sum + &term;
        }
        if !self.theta.apply(&term).is_zero() {
            return Err(ModelError::Precondition(format!(
                "exp(theta) did not terminate within {} terms",
                self.exp_cap
            )));
        }
        Ok(sum)
    }

    /// Checks every structural invariant; the report lists the failures.
    pub fn check(&self, monomials: bool) -> Result<CylinderCheck, ModelError> {
        let src = &self.source;
        let mut out = CylinderCheck::default();
        for (i, g) in src.generators().iter().enumerate() {
            let x = src.lie().gen(i);
            if self.p.apply(&self.lambda0.apply(&x)) != x {
                out.failures.push(format!("p(lambda0({})) != {}", g.name, g.name));
            }
            if self.p.apply(&self.lambda1.apply(&x)) != x {
                out.failures.push(format!("p(lambda1({})) != {}", g.name, g.name));
            }
            let lhs = self.result.d(&self.lambda1.values()[i]);
            let rhs = self.lambda1.apply(&src.diff_values()[i]);
            if lhs != rhs {
                out.failures.push(format!("lambda1 does not commute with d on {}", g.name));
            }
            if src.diff_values()[i].is_zero() {
                let expected = &self.result.lie().gen(i) + &self.result.lie().gen(self.hat_index[i]);
                if self.lambda1.values()[i] != expected {
                    out.failures.push(format!("lambda1({0}) != {0} + {0}_hat", g.name));
                }
            }
        }
        for (j, g) in self.result.generators().iter().enumerate() {
            let x = self.result.lie().gen(j);
            let commutator = &self.result.d(&self.sigma.apply(&x)) + &self.sigma.apply(&self.result.d(&x));
            let top = j < src.generators().len() && self.s_index[j].is_none();
            if !top && commutator.with_degree(g.degree) != self.theta.values()[j] {
                out.failures.push(format!("theta != [D, sigma] on {}", g.name));
            }
        }
        if monomials {
            for n in 1..=self.result.max_degree() {
                for e in self.result.lie().basis(n).elements() {
                    out.monomials_checked += 1;
                    if self.exp(&self.exp(e, false)?, true)? != *e {
                        out.failures.push(format!("exp(-theta) exp(theta) != 1 in degree {n}"));
                        break;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CylinderCheck {
    pub monomials_checked: usize,
    pub failures: Vec<String>,
}

impl CylinderCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of [`verify_homotopy`].
#[derive(Clone, Debug)]
pub struct HomotopyVerdict {
    pub holds: bool,
    /// `(generator, H(lambda1(v)), end(v))` where they differ.
    pub mismatches: Vec<(String, String, String)>,
    /// Top-degree generators whose `sv` lies above the truncation degree.
    pub truncated: Vec<String>,
}

/// Builds `H: L(V)_I -> target` with `H|V = start`, `H(sv) = svalues[v]`,
/// `H(v̂) = d(svalues[v])` and checks `H ∘ lambda1 = end` on generators.
pub fn verify_homotopy(
    cyl: &CylinderModel,
    target: &Arc<DglModel>,
    start: &DglMorphism,
    svalues: &[LieElement],
    end: &DglMorphism,
) -> Result<HomotopyVerdict, ModelError> {
    let src = &cyl.source;
    for (m, what) in [(start, "start"), (end, "end")] {
        if !Arc::ptr_eq(m.source(), src) || !Arc::ptr_eq(m.target(), target) {
            return Err(ModelError::Precondition(format!(
                "`{what}` must map the cylinder's source model to the target"
            )));
        }
    }
    if svalues.len() != src.generators().len() {
        return Err(ModelError::Precondition(format!(
            "{} homotopy values for {} generators",
            svalues.len(),
            src.generators().len()
        )));
    }
    let mut values: Vec<LieElement> = start.values().to_vec();
    let mut hats = Vec::new();
    let mut truncated = Vec::new();
    for (i, g) in src.generators().iter().enumerate() {
        let s = &svalues[i];
        if !s.is_zero() && s.degree() != g.degree + 1 {
            return Err(ModelError::Degree {
                what: "homotopy value".into(),
                generator: g.name.clone(),
                expected: g.degree + 1,
                found: s.degree(),
            });
        }
        match cyl.s_index[i] {
            Some(_) => {
                let s = s.clone().with_degree(g.degree + 1);
                hats.push(target.d(&s).with_degree(g.degree));
                values.push(s);
            }
            None => {
                if !s.is_zero() {
                    return Err(ModelError::Precondition(format!(
                        "homotopy value on `{}` lies above the truncation degree",
                        g.name
                    )));
                }
                truncated.push(g.name.clone());
                hats.push(LieElement::zero(g.degree));
            }
        }
    }
    values.extend(hats);
    let h = DglMorphism::new("H", cyl.result.clone(), target.clone(), values)?;
    let mut mismatches = Vec::new();
    for (i, g) in src.generators().iter().enumerate() {
        let got = h.apply(&cyl.lambda1.values()[i]);
        if got != end.values()[i] {
            mismatches.push((g.name.clone(), target.render(&got), target.render(&end.values()[i])));
        }
    }
    Ok(HomotopyVerdict {
        holds: mismatches.is_empty(),
        mismatches,
        truncated,
    })
}
