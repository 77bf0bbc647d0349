//! Evaluation subgroups, Whitehead centers, relative evaluation subgroups and
//! the G-sequence of a DGL map `psi: L -> K`.
//!
//! Subgroups are indexed by topological degree `n`; they live in internal
//! degree `m = n - 1` of the relevant homology.

use std::sync::Arc;

use crate::complex::{ChainMap, Cone};
use crate::der::{der_differential, induced_derivation, evaluation_window, GenDerivation};
use crate::lie::{bracket, LieElement, Upper};
use crate::linalg::{combine, intersection_basis, RationalMatrix, SparseVec, Echelon};
use crate::model::{DglModel, DglMorphism, ModelError};
use crate::rel::{pair_map, rel_of_morphism, StarRel};

/// Internal degrees at or below this are outside the range where the algebraic
/// subgroups are known to agree with the topological ones.
pub const LOW_DEGREE_CAVEAT: i32 = 2;

/// A subspace of one homology group.
#[derive(Clone, Debug)]
pub struct SubspaceReport {
    pub topological: i32,
    pub internal: i32,
    pub ambient_dim: usize,
    pub dim: usize,
    /// Basis in class coordinates of the ambient homology group.
    pub basis: Vec<SparseVec<usize>>,
    pub representatives: Vec<String>,
    pub trusted: bool,
    pub low_degree: bool,
}

/// Dimension of `P/G` computed twice.
#[derive(Clone, Debug)]
pub struct GvsP {
    pub g: SubspaceReport,
    pub p: SubspaceReport,
    /// `dim P - dim G`.
    pub quotient_dim: usize,
    /// Basis of `ker(I) ∩ im H(ad_psi)` in `H(Der)` class coordinates.
    pub witness: Vec<SparseVec<usize>>,
    pub witness_representatives: Vec<String>,
    pub agree: bool,
}

/// One degree of the G-sequence `G_n(L) -> G_n(K) -> G^rel_n -> G_{n-1}(L)`.
#[derive(Clone, Debug)]
pub struct GSequenceDegree {
    pub topological: i32,
    pub g_source: SubspaceReport,
    pub g_map: SubspaceReport,
    pub g_rel: SubspaceReport,
    /// Each map sends its subgroup into the next one.
    pub maps_into_subgroups: bool,
    /// Consecutive composites vanish.
    pub composite_zero: bool,
    /// Homology of the sequence at `G_n(L)`, `G_n(K)` and `G^rel_n`; `None` where a neighbour is unavailable.
    pub homology_source: Option<usize>,
    pub homology_map: Option<usize>,
    pub homology_rel: Option<usize>,
    pub trusted: bool,
}

/// Analysis context for one map: all derivation and relative complexes, built once.
#[derive(Debug)]
pub struct MapAnalysis {
    psi: Arc<DglMorphism>,
    rel: Cone,
    star: StarRel,
    ad_psi: ChainMap,
    ad_l: ChainMap,
    pair: ChainMap,
}

/// `ker` of `m` restricted to `span(basis)`, as ambient vectors.
fn restricted_kernel(m: &RationalMatrix, basis: &[SparseVec<usize>]) -> Vec<SparseVec<usize>> {
    let images: Vec<SparseVec<usize>> = basis.iter().map(|b| m.apply(b)).collect();
    let r = RationalMatrix::from_columns(m.nrows(), images);
    r.kernel_basis().iter().map(|k| combine(k, basis)).collect()
}

fn span_rank(vs: &[SparseVec<usize>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

fn contained(sub: &[SparseVec<usize>], space: &[SparseVec<usize>]) -> bool {
    let mut e = Echelon::new();
    for v in space {
        e.insert(v);
    }
    sub.iter().all(|v| e.contains(v))
}

impl MapAnalysis {
    pub fn new(psi: Arc<DglMorphism>) -> Result<Self, ModelError> {
        psi.source().require_valid()?;
        psi.target().require_valid()?;
        let rel = rel_of_morphism(&psi);
        let star = StarRel::new(&psi);
        let ad_psi = star.der_lk.adjoint_map();
        let ad_l = star.der_ll.adjoint_map();
        let pair = pair_map(&rel, &star);
        Ok(MapAnalysis {
            psi,
            rel,
            star,
            ad_psi,
            ad_l,
            pair,
        })
    }

    /// Analysis of the identity of `model`; its evaluation subgroups are the Gottlieb groups.
    pub fn identity(model: Arc<DglModel>) -> Result<Self, ModelError> {
        MapAnalysis::new(Arc::new(DglMorphism::identity(model)))
    }

    pub fn psi(&self) -> &Arc<DglMorphism> {
        &self.psi
    }

    pub fn star(&self) -> &StarRel {
        &self.star
    }

    pub fn rel(&self) -> &Cone {
        &self.rel
    }

    /// Highest internal degree in which the adjoint maps are materialized.
    pub fn max_internal(&self) -> i32 {
        self.ad_psi.hi()
    }

    fn check_window(&self, m: i32) -> Result<(), ModelError> {
        if m < 1 || m > self.max_internal() {
            return Err(ModelError::Precondition(format!(
                "internal degree {m} is outside the computable window [1, {}]; raise the truncation degree",
                self.max_internal()
            )));
        }
        Ok(())
    }

    fn report(
        &self,
        n: i32,
        ambient_dim: usize,
        basis: Vec<SparseVec<usize>>,
        render: impl Fn(&SparseVec<usize>) -> String,
        trusted: bool,
    ) -> SubspaceReport {
        let representatives = basis.iter().map(render).collect();
        SubspaceReport {
            topological: n,
            internal: n - 1,
            ambient_dim,
            dim: basis.len(),
            basis,
            representatives,
            trusted,
            low_degree: n - 1 <= LOW_DEGREE_CAVEAT,
        }
    }

    fn k(&self) -> &DglModel {
        self.psi.target()
    }

    fn l(&self) -> &DglModel {
        self.psi.source()
    }

    /// The cycle of `K` with the given class coordinates in `H_m(K)`.
    pub fn target_cycle(&self, m: i32, coords: &SparseVec<usize>) -> LieElement {
        let h = self.k().complex().homology(m);
        self.k().element(m, &h.cycle(coords))
    }

    pub fn source_cycle(&self, m: i32, coords: &SparseVec<usize>) -> LieElement {
        let h = self.l().complex().homology(m);
        self.l().element(m, &h.cycle(coords))
    }

    fn render_k(&self, m: i32) -> impl Fn(&SparseVec<usize>) -> String + '_ {
        move |c| self.k().render(&self.target_cycle(m, c))
    }

    fn render_l(&self, m: i32) -> impl Fn(&SparseVec<usize>) -> String + '_ {
        move |c| self.l().render(&self.source_cycle(m, c))
    }

    fn render_rel(&self, m: i32) -> impl Fn(&SparseVec<usize>) -> String + '_ {
        move |c| {
            let cyc = self.rel.complex.homology(m).cycle(c);
            let (k, l) = self.rel.split(m, &cyc);
            format!(
                "({}, {})",
                self.k().render(&self.k().element(m, &k)),
                self.l().render(&self.l().element(m - 1, &l))
            )
        }
    }

    /// `H_m(ad_psi): H_m(K) -> H_m(Der(L, K; psi))`.
    pub fn h_ad_psi(&self, m: i32) -> RationalMatrix {
        self.ad_psi
            .induced(self.k().complex(), self.star.der_lk.complex(), m)
    }

    fn der_trusted(&self, m: i32) -> bool {
        self.k().complex().trusted(m) && self.star.der_lk.complex().trusted(m)
    }

    /// `G_n(K, L; psi) = ker H(ad_psi)` in `H_{n-1}(K)`.
    pub fn evaluation_subgroup(&self, n: i32) -> Result<SubspaceReport, ModelError> {
        let m = n - 1;
        self.check_window(m)?;
        let h = self.h_ad_psi(m);
        let basis = h.kernel_basis();
        Ok(self.report(n, h.ncols(), basis, self.render_k(m), self.der_trusted(m)))
    }

    /// `G_n(L) = ker H(ad)` in `H_{n-1}(L)`.
    pub fn source_gottlieb(&self, n: i32) -> Result<SubspaceReport, ModelError> {
        let m = n - 1;
        self.check_window(m)?;
        let h = self
            .ad_l
            .induced(self.l().complex(), self.star.der_ll.complex(), m);
        let trusted = self.l().complex().trusted(m) && self.star.der_ll.complex().trusted(m);
        Ok(self.report(n, h.ncols(), h.kernel_basis(), self.render_l(m), trusted))
    }

    /// `ad_{H(psi)}` on `H_m(K)`: `alpha -> (beta -> <[alpha, psi beta]>)`, with
    /// `beta` running over the classes of `H(L)` in the evaluation window.
    pub fn ad_on_homology(&self, m: i32) -> RationalMatrix {
        let hk = self.k().complex().homology(m);
        let window = evaluation_window(self.l(), self.k(), m);
        let mut rows = 0;
        let mut cols = vec![Vec::new(); hk.dim()];
        for k in window {
            let hl = self.l().complex().homology(k);
            let ht = self.k().complex().homology(k + m);
            for (a, col) in cols.iter_mut().enumerate() {
                let alpha = self.target_cycle(m, &SparseVec::unit(a));
                for (b, beta) in hl.reps().iter().enumerate() {
                    let img = bracket(&alpha, &self.psi.apply(&self.l().element(k, beta)));
                    let cls = ht.class_of(&self.k().coords(&img)).expect("bracket of cycles is a cycle");
                    for (i, v) in cls.iter() {
                        col.push((rows + b * ht.dim() + i, v.clone()));
                    }
                }
            }
            rows += hl.dim() * ht.dim();
        }
        RationalMatrix::from_columns(rows, cols.into_iter().map(SparseVec::from_pairs).collect())
    }

    /// Whitehead center `P_n = ker ad_{H(psi)}` in `H_{n-1}(K)`.
    pub fn whitehead_center(&self, n: i32) -> Result<SubspaceReport, ModelError> {
        let m = n - 1;
        self.check_window(m)?;
        let a = self.ad_on_homology(m);
        Ok(self.report(n, a.ncols(), a.kernel_basis(), self.render_k(m), self.der_trusted(m)))
    }

    /// `I` on `H_m(Der(L, K; psi))`, flattened in the same layout as [`MapAnalysis::ad_on_homology`].
    pub fn induced_map(&self, m: i32) -> RationalMatrix {
        let reps = self.star.der_lk.homology_reps(m);
        let cols: Vec<SparseVec<usize>> = reps
            .iter()
            .map(|t| induced_derivation(t).expect("homology representatives are cycles").flatten())
            .collect();
        let rows = self.ad_on_homology(m).nrows();
        RationalMatrix::from_columns(rows, cols)
    }

    /// `P_n / G_n`, once as a dimension difference and once as `ker(I) ∩ im H(ad_psi)`.
    pub fn g_vs_p(&self, n: i32) -> Result<GvsP, ModelError> {
        let m = n - 1;
        let g = self.evaluation_subgroup(n)?;
        let p = self.whitehead_center(n)?;
        let i_map = self.induced_map(m);
        let ker_i = i_map.kernel_basis();
        let h = self.h_ad_psi(m);
        let im_ad: Vec<SparseVec<usize>> = h.columns().to_vec();
        let witness = intersection_basis(&ker_i, &im_ad);
        let witness_representatives = witness
            .iter()
            .map(|w| {
                let cyc = self.star.der_lk.homology(m).cycle(w);
                self.star.der_lk.derivation(m, &cyc).render()
            })
            .collect();
        let quotient_dim = p.dim - g.dim;
        let agree = quotient_dim == witness.len() && contained(&g.basis, &p.basis);
        Ok(GvsP {
            g,
            p,
            quotient_dim,
            witness,
            witness_representatives,
            agree,
        })
    }

    /// `H(ad_psi, ad): H_m(Rel(psi)) -> H_m(Rel(psi_*))`.
    pub fn h_pair(&self, m: i32) -> RationalMatrix {
        self.pair
            .induced(&self.rel.complex, &self.star.cone.complex, m)
    }

    fn rel_trusted(&self, m: i32) -> bool {
        self.rel.complex.trusted(m) && self.star.cone.complex.trusted(m)
    }

    /// `G^rel_n = ker H(ad_psi, ad)` in `H_{n-1}(Rel(psi))`.
    pub fn rel_evaluation_subgroup(&self, n: i32) -> Result<SubspaceReport, ModelError> {
        let m = n - 1;
        self.check_window(m)?;
        let h = self.h_pair(m);
        Ok(self.report(n, h.ncols(), h.kernel_basis(), self.render_rel(m), self.rel_trusted(m)))
    }

    /// `H(J)` on `H_m(K)` and `H(P)` on `H_m(Rel)`.
    pub fn h_j(&self, m: i32) -> RationalMatrix {
        self.rel.j_map().induced(self.k().complex(), &self.rel.complex, m)
    }

    pub fn h_p(&self, m: i32) -> RationalMatrix {
        let p = self.rel.p_map();
        if m - 1 < 1 {
            return RationalMatrix::zero(0, self.rel.complex.homology(m).dim());
        }
        p.induced(&self.rel.complex, self.l().complex(), m)
    }

    /// The G-sequence around topological degree `n`.
    pub fn g_sequence_degree(&self, n: i32) -> Result<GSequenceDegree, ModelError> {
        let m = n - 1;
        let gl = self.source_gottlieb(n)?;
        let gk = self.evaluation_subgroup(n)?;
        let gr = self.rel_evaluation_subgroup(n)?;
        let hpsi = self.psi.homology_map(m);
        let hj = self.h_j(m);
        let hp = self.h_p(m);
        let img_l: Vec<_> = gl.basis.iter().map(|b| hpsi.apply(b)).collect();
        let img_k: Vec<_> = gk.basis.iter().map(|b| hj.apply(b)).collect();
        let img_r: Vec<_> = gr.basis.iter().map(|b| hp.apply(b)).collect();
        let gl_below = if m > 1 { Some(self.source_gottlieb(n - 1)?) } else { None };
        let mut maps_into = contained(&img_l, &gk.basis) && contained(&img_k, &gr.basis);
        if let Some(b) = &gl_below {
            maps_into &= contained(&img_r, &b.basis);
        }
        let composite_zero = gl.basis.iter().all(|b| hj.apply(&hpsi.apply(b)).is_zero())
            && gk.basis.iter().all(|b| m - 1 < 1 || hp.apply(&hj.apply(b)).is_zero());
        // incoming image at G_n(L) comes from G^rel_{n+1}
        let homology_source = if m < self.max_internal() {
            let gr_up = self.rel_evaluation_subgroup(n + 1)?;
            let hp_up = self.h_p(m + 1);
            let incoming: Vec<_> = gr_up.basis.iter().map(|b| hp_up.apply(b)).collect();
            let ker = restricted_kernel(&hpsi, &gl.basis);
            Some(ker.len() - span_rank(&incoming))
        } else {
            None
        };
        let homology_map = {
            let ker = restricted_kernel(&hj, &gk.basis);
            Some(ker.len() - span_rank(&img_l))
        };
        let homology_rel = if m > 1 {
            let ker = restricted_kernel(&hp, &gr.basis);
            Some(ker.len() - span_rank(&img_k))
        } else {
            None
        };
        let trusted = gl.trusted && gk.trusted && gr.trusted && homology_source.is_some();
        Ok(GSequenceDegree {
            topological: n,
            g_source: gl,
            g_map: gk,
            g_rel: gr,
            maps_into_subgroups: maps_into,
            composite_zero,
            homology_source,
            homology_map,
            homology_rel,
            trusted,
        })
    }

    /// `H^{aω}_n = ker{G_n(L) -> G_n(K)} / im{G^rel_{n+1} -> G_n(L)}`.
    pub fn omega_homology(&self, n: i32) -> Result<(usize, bool), ModelError> {
        let d = self.g_sequence_degree(n)?;
        let trusted = d.trusted && self.rel_trusted(n);
        match d.homology_source {
            Some(h) => Ok((h, trusted)),
            None => Err(ModelError::Precondition(format!(
                "omega-homology in degree {n} needs G^rel in internal degree {}, beyond the window",
                n
            ))),
        }
    }
}

/// Gottlieb group `G_n(L)`.
pub fn gottlieb(model: Arc<DglModel>, n: i32) -> Result<SubspaceReport, ModelError> {
    MapAnalysis::identity(model)?.source_gottlieb(n)
}

/// Verdict of [`coformal_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoformalVerdict {
    pub coformal: bool,
    pub reasons: Vec<String>,
}

/// A model is coformal when it is validly bigraded and its homology sits in
/// upper degree 0 throughout the trusted window.
pub fn coformal_model(model: &DglModel) -> CoformalVerdict {
    let mut reasons = Vec::new();
    let v = model.validate();
    match v.bigraded_ok {
        None => reasons.push(format!("`{}` has no upper grading", model.name())),
        Some(false) => reasons.push(format!("`{}` is not validly bigraded", model.name())),
        Some(true) => {
            for n in 1..model.max_degree() {
                for (u, d) in model.upper_homology_dims(n) {
                    if u > 0 && d > 0 {
                        reasons.push(format!(
                            "`{}` has homology of upper degree {u} in degree {n}",
                            model.name()
                        ));
                    }
                }
            }
        }
    }
    CoformalVerdict {
        coformal: reasons.is_empty(),
        reasons,
    }
}

/// A map is coformal when both models are and it preserves upper degrees.
pub fn coformal_check(psi: &DglMorphism) -> CoformalVerdict {
    let mut a = coformal_model(psi.source());
    let b = coformal_model(psi.target());
    a.reasons.extend(b.reasons);
    if !psi.preserves_upper() {
        a.reasons.push(format!("`{}` does not preserve upper degrees", psi.name()));
    }
    CoformalVerdict {
        coformal: a.reasons.is_empty(),
        reasons: a.reasons,
    }
}

/// Builds `theta` with `D(theta) = ad_psi(xi)` for a coformal `psi` and an
/// upper-degree-0 cycle `xi` with `I(H(ad_psi)<xi>) = 0`, generator by generator
/// in increasing upper degree.
pub fn coformal_bounding_derivation(
    psi: &Arc<DglMorphism>,
    xi: &LieElement,
) -> Result<GenDerivation, ModelError> {
    let verdict = coformal_check(psi);
    if !verdict.coformal {
        return Err(ModelError::Precondition(format!(
            "the map is not coformal: {}",
            verdict.reasons.join("; ")
        )));
    }
    let src = psi.source().clone();
    let tgt = psi.target().clone();
    let n = xi.degree();
    let deg = n + 1;
    if xi.is_zero() {
        return Ok(GenDerivation::zero(psi.clone(), deg));
    }
    if !tgt.d(xi).is_zero() {
        return Err(ModelError::Precondition("xi is not a cycle".into()));
    }
    if tgt.lie().upper(xi) != Upper::Pure(0) {
        return Err(ModelError::Precondition("xi is not of upper degree 0".into()));
    }
    let gens = src.generators();
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| (gens[i].upper.unwrap(), gens[i].degree, i));
    let mut values: Vec<LieElement> = gens.iter().map(|g| LieElement::zero(g.degree + deg)).collect();
    let sign = crate::rational::Q::sign(deg as i64);
    for &i in &order {
        let g = &gens[i];
        if g.degree + deg > tgt.max_degree() {
            return Err(ModelError::Precondition(format!(
                "the value on `{}` has degree {} beyond the truncation degree",
                g.name,
                g.degree + deg
            )));
        }
        let partial = GenDerivation::new(psi.clone(), deg, values.clone())?;
        let rhs = bracket(xi, &psi.values()[i]).add_scaled(&sign, &partial.apply(&src.diff_values()[i]));
        if !tgt.d(&rhs).is_zero() {
            return Err(ModelError::Precondition(format!(
                "the obstruction on `{}` is not a cycle",
                g.name
            )));
        }
        let u = g.upper.unwrap();
        let zeta = tgt.solve_d(&rhs, Some(u + 1)).ok_or_else(|| {
            ModelError::Precondition(format!("no bounding value for generator `{}`", g.name))
        })?;
        values[i] = zeta;
    }
    let theta = GenDerivation::new(psi.clone(), deg, values)?;
    let ad = crate::der::adjoint(psi, xi);
    if der_differential(&theta) != ad {
        return Err(ModelError::Precondition("constructed derivation does not bound".into()));
    }
    Ok(theta)
}
