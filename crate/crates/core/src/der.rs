//! Derivation complexes `Der_*(L, K; psi)` of a DGL map `psi: L -> K`.
//!
//! A degree-`n` `psi`-derivation satisfies
//! `theta[a,b] = [theta a, psi b] + (-1)^{n|a|} [psi a, theta b]`, so on a free
//! `L` it is determined by its generator values. The differential is
//! `D(theta) = d_K theta - (-1)^n theta d_L`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{ChainMap, GradedComplex, HomologyGroup};
use crate::lie::{apply_derivation, bracket, LieElement, TensorPoly};
use crate::linalg::{RationalMatrix, SparseVec};
use crate::model::{extend_derivation, DerivationEval, DglModel, DglMorphism, ModelError};
use crate::rational::Q;

/// A `psi`-derivation stored by its values on the source generators.
#[derive(Clone, Debug)]
pub struct GenDerivation {
    along: Arc<DglMorphism>,
    degree: i32,
    values: Vec<LieElement>,
    eval: DerivationEval,
}

impl PartialEq for GenDerivation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.along, &other.along) && self.degree == other.degree && self.values == other.values
    }
}

impl GenDerivation {
    pub fn new(along: Arc<DglMorphism>, degree: i32, values: Vec<LieElement>) -> Result<Self, ModelError> {
        let src = along.source().clone();
        let values: Vec<LieElement> = values
            .into_iter()
            .zip(src.generators())
            .map(|(v, g)| {
                if v.is_zero() {
                    LieElement::zero(g.degree + degree)
                } else {
                    v
                }
            })
            .collect();
        let eval = extend_derivation(
            src.lie(),
            &values,
            degree,
            (!along.is_identity()).then_some(&*along),
        )?;
        Ok(GenDerivation {
            along,
            degree,
            values,
            eval,
        })
    }

    pub fn zero(along: Arc<DglMorphism>, degree: i32) -> Self {
        let values = along
            .source()
            .generators()
            .iter()
            .map(|g| LieElement::zero(g.degree + degree))
            .collect();
        GenDerivation::new(along, degree, values).expect("zero values are homogeneous")
    }

    pub fn along(&self) -> &Arc<DglMorphism> {
        &self.along
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn values(&self) -> &[LieElement] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// The derivation applied to any element of the source.
    pub fn apply(&self, e: &LieElement) -> LieElement {
        self.eval.apply(e)
    }

    pub fn add_scaled(&self, c: &Q, other: &GenDerivation) -> GenDerivation {
        assert_eq!(self.degree, other.degree, "sum of derivations of different degrees");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add_scaled(c, b))
            .collect();
        GenDerivation::new(self.along.clone(), self.degree, values).expect("homogeneous")
    }

    pub fn scale(&self, c: &Q) -> GenDerivation {
        let values = self.values.iter().map(|v| v.scale(c)).collect();
        GenDerivation::new(self.along.clone(), self.degree, values).expect("homogeneous")
    }

    /// Lists the nonzero generator values, e.g. `x3 -> [u3,u3]`.
    pub fn render(&self) -> String {
        let src = self.along.source();
        let tgt = self.along.target();
        let parts: Vec<String> = src
            .generators()
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, v)| format!("{} -> {}", g.name, tgt.render(v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

/// `D(theta) = d_K theta - (-1)^{|theta|} theta d_L`.
pub fn der_differential(theta: &GenDerivation) -> GenDerivation {
    let src = theta.along.source();
    let tgt = theta.along.target();
    let sign = Q::sign(theta.degree as i64);
    let values = src
        .diff_values()
        .iter()
        .zip(&theta.values)
        .map(|(dg, v)| tgt.d(v).add_scaled(&-&sign, &theta.apply(dg)))
        .collect();
    GenDerivation::new(theta.along.clone(), theta.degree - 1, values).expect("homogeneous")
}

/// `ad_psi(y)(g) = [y, psi(g)]`.
pub fn adjoint(psi: &Arc<DglMorphism>, y: &LieElement) -> GenDerivation {
    let values = psi.values().iter().map(|v| bracket(y, v)).collect();
    GenDerivation::new(psi.clone(), y.degree(), values).expect("homogeneous")
}

/// `psi_*(theta) = psi . theta` for `theta` a derivation of `L` along the identity.
pub fn push_forward(psi: &Arc<DglMorphism>, theta: &GenDerivation) -> Result<GenDerivation, ModelError> {
    if !theta.along.is_identity() || !Arc::ptr_eq(theta.along.source(), psi.source()) {
        return Err(ModelError::Precondition(
            "push-forward needs a derivation of the source of the map".into(),
        ));
    }
    let values = theta.values.iter().map(|v| psi.apply(v)).collect();
    GenDerivation::new(psi.clone(), theta.degree, values)
}

/// `[a, b] = a.b - (-1)^{|a||b|} b.a` for derivations along one identity map.
pub fn der_bracket(a: &GenDerivation, b: &GenDerivation) -> Result<GenDerivation, ModelError> {
    if !a.along.is_identity() || !Arc::ptr_eq(&a.along, &b.along) {
        return Err(ModelError::Precondition(
            "the bracket is defined for derivations along one identity map".into(),
        ));
    }
    let sign = Q::sign(a.degree as i64 * b.degree as i64);
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(av, bv)| a.apply(bv).add_scaled(&-&sign, &b.apply(av)))
        .collect();
    GenDerivation::new(a.along.clone(), a.degree + b.degree, values)
}

/// The complex `Der_*(L, K; psi)` on the window where every generator value
/// fits below the truncation degree.
#[derive(Debug)]
pub struct DerComplex {
    along: Arc<DglMorphism>,
    offsets: Vec<Vec<usize>>,
    complex: GradedComplex,
}

impl DerComplex {
    pub fn new(along: Arc<DglMorphism>) -> Self {
        let src = along.source().clone();
        let tgt = along.target().clone();
        let n_max = tgt.max_degree();
        let gmax = src.lie().max_generator_degree();
        let (lo, hi) = if src.generators().is_empty() {
            (1, n_max)
        } else {
            (1 - gmax, n_max - gmax)
        };
        let degrees: Vec<i32> = src.generators().iter().map(|g| g.degree).collect();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let mut off = Vec::with_capacity(degrees.len() + 1);
            let mut total = 0;
            for &d in &degrees {
                off.push(total);
                total += tgt.lie().dim(d + n);
            }
            off.push(total);
            dims.push(total);
            offsets.push(off);
        }
        let along_polys: Option<Vec<TensorPoly>> = (!along.is_identity())
            .then(|| along.values().iter().map(|v| v.terms().clone()).collect());
        let mut diffs = Vec::new();
        for (k, n) in (lo..=hi).enumerate() {
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            let mut cols = Vec::with_capacity(dims[k]);
            let sign = Q::sign(n as i64);
            for (i, &gd) in degrees.iter().enumerate() {
                let basis = tgt.lie().basis(gd + n);
                for b in basis.elements() {
                    if k == 0 {
                        cols.push(SparseVec::new());
                        continue;
                    }
                    let mut values: Vec<TensorPoly> = vec![SparseVec::new(); degrees.len()];
                    values[i] = b.terms().clone();
                    let mut col = SparseVec::new();
                    for (h, dh) in src.diff_values().iter().enumerate() {
                        let theta_dh = LieElement::from_poly(
                            dh.degree() + n,
                            apply_derivation(
                                dh.terms(),
                                src.lie().letter_degrees(),
                                n,
                                &values,
                                along_polys.as_deref(),
                            ),
                        );
                        let mut v = theta_dh.scale(&-&sign);
                        if h == i {
                            v = &v + &tgt.d(b).with_degree(v.degree());
                        }
                        if !v.is_zero() {
                            col = col.add(&tgt.coords(&v).shift(offsets[k - 1][h]));
                        }
                    }
                    cols.push(col);
                }
            }
            diffs.push(RationalMatrix::from_columns(rows, cols));
        }
        DerComplex {
            along,
            offsets,
            complex: GradedComplex::new(lo, dims, diffs),
        }
    }

    pub fn along(&self) -> &Arc<DglMorphism> {
        &self.along
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn lo(&self) -> i32 {
        self.complex.lo()
    }

    pub fn hi(&self) -> i32 {
        self.complex.hi()
    }

    /// Coordinates of `theta` in `Der_{|theta|}`.
    pub fn coords(&self, theta: &GenDerivation) -> SparseVec<usize> {
        let n = theta.degree;
        assert!(
            self.complex.in_range(n),
            "derivation of degree {n} outside the window [{}, {}]",
            self.lo(),
            self.hi()
        );
        let off = &self.offsets[(n - self.lo()) as usize];
        let tgt = self.along.target();
        let mut acc = SparseVec::new();
        for (i, v) in theta.values.iter().enumerate() {
            if !v.is_zero() {
                acc = acc.add(&tgt.coords(v).shift(off[i]));
            }
        }
        acc
    }

    pub fn derivation(&self, n: i32, coords: &SparseVec<usize>) -> GenDerivation {
        if n < self.lo() {
            return GenDerivation::zero(self.along.clone(), n);
        }
        let off = &self.offsets[(n - self.lo()) as usize];
        let src = self.along.source();
        let tgt = self.along.target();
        let values = src
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| tgt.element(g.degree + n, &coords.slice(off[i], off[i + 1])))
            .collect();
        GenDerivation::new(self.along.clone(), n, values).expect("homogeneous")
    }

    pub fn homology(&self, n: i32) -> &HomologyGroup {
        self.complex.homology(n)
    }

    /// Homology representatives in degree `n` as derivations.
    pub fn homology_reps(&self, n: i32) -> Vec<GenDerivation> {
        if n < self.lo() {
            return Vec::new();
        }
        self.homology(n)
            .reps()
            .iter()
            .map(|r| self.derivation(n, r))
            .collect()
    }

    /// The chain map `ad_psi: K -> Der(L, K; psi)` on the common window.
    pub fn adjoint_map(&self) -> ChainMap {
        let tgt = self.along.target();
        let lo = 1;
        let hi = self.hi().min(tgt.max_degree());
        let mats = (lo..=hi)
            .map(|n| {
                let cols = tgt
                    .lie()
                    .basis(n)
                    .elements()
                    .iter()
                    .map(|y| self.coords(&adjoint(&self.along, y)))
                    .collect();
                RationalMatrix::from_columns(self.complex.dim(n), cols)
            })
            .collect();
        ChainMap::new(0, lo, mats)
    }

    /// The chain map `psi_*: Der(L, L; 1) -> Der(L, K; psi)`, with `inner` the former.
    pub fn push_forward_map(&self, inner: &DerComplex) -> ChainMap {
        assert!(inner.along.is_identity());
        let lo = inner.lo().max(self.lo());
        let hi = inner.hi().min(self.hi());
        let mats = (lo..=hi)
            .map(|n| {
                let cols = (0..inner.complex.dim(n))
                    .map(|j| {
                        let theta = inner.derivation(n, &SparseVec::unit(j));
                        let pushed = push_forward(&self.along, &theta).expect("compatible maps");
                        self.coords(&pushed)
                    })
                    .collect();
                RationalMatrix::from_columns(self.complex.dim(n), cols)
            })
            .collect();
        ChainMap::new(0, lo, mats)
    }
}

/// The map `H(theta)` on homology induced by a `D`-cycle, in representative
/// coordinates: for each source degree `k`, a matrix `H_k(L) -> H_{k+n}(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDerivation {
    pub degree: i32,
    pub maps: BTreeMap<i32, RationalMatrix>,
}

impl InducedDerivation {
    pub fn is_zero(&self) -> bool {
        self.maps.values().all(|m| m.is_zero())
    }

    /// All matrices stacked into one coordinate vector.
    pub fn flatten(&self) -> SparseVec<usize> {
        let mut pairs = Vec::new();
        let mut off = 0;
        for m in self.maps.values() {
            for j in 0..m.ncols() {
                for (i, v) in m.column(j).iter() {
                    pairs.push((off + j * m.nrows() + i, v.clone()));
                }
            }
            off += m.nrows() * m.ncols();
        }
        SparseVec::from_pairs(pairs)
    }
}

/// Source degrees `k` of `H(L)` on which a degree-`n` homology derivation is
/// evaluated: those with `k + n` inside the trusted homology window of `K`.
pub fn evaluation_window(source: &DglModel, target: &DglModel, n: i32) -> Vec<i32> {
    let top = target.max_degree() - 1;
    (1..=source.max_degree() - 1)
        .filter(|&k| k + n >= 1 && k + n <= top)
        .collect()
}

/// `I(<theta>) = H(theta)`, evaluated on the classes of `H(L)` in [`evaluation_window`].
pub fn induced_derivation(theta: &GenDerivation) -> Result<InducedDerivation, ModelError> {
    if !der_differential(theta).is_zero() {
        return Err(ModelError::Precondition("the derivation is not a D-cycle".into()));
    }
    let src = theta.along.source();
    let tgt = theta.along.target();
    let n = theta.degree;
    let mut maps = BTreeMap::new();
    for k in evaluation_window(src, tgt, n) {
        let hs = src.complex().homology(k);
        let ht = tgt.complex().homology(k + n);
        let cols = hs
            .reps()
            .iter()
            .map(|r| {
                let img = theta.apply(&src.element(k, r));
                ht.class_of(&tgt.coords(&img)).expect("a D-cycle maps cycles to cycles")
            })
            .collect();
        maps.insert(k, RationalMatrix::from_columns(ht.dim(), cols));
    }
    Ok(InducedDerivation { degree: n, maps })
}
