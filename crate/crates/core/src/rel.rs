//! Relative complexes (mapping cones) and their long exact homology sequences.
//!
//! For a chain map `phi: V -> W` the sequence is
//! `... -> H_{n+1}(Rel) -P-> H_n(V) -phi-> H_n(W) -J-> H_n(Rel) -P-> H_{n-1}(V) -> ...`

use std::fmt;
use std::sync::Arc;

use crate::complex::{exact_at, ChainMap, Cone, ExactnessCheck, GradedComplex};
use crate::der::{DerComplex, GenDerivation};
use crate::linalg::{RationalMatrix, SparseVec};
use crate::model::DglMorphism;

/// `Rel(psi)` for a DGL map: `Rel_n = K_n + L_{n-1}`.
pub fn rel_of_morphism(psi: &DglMorphism) -> Cone {
    Cone::new(psi.chain_map(), psi.source().complex(), psi.target().complex())
}

/// `Rel(psi_*)`: `Rel_n = Der_n(L, K; psi) + Der_{n-1}(L, L; 1)`.
#[derive(Debug)]
pub struct StarRel {
    pub der_lk: DerComplex,
    pub der_ll: DerComplex,
    pub psi_star: ChainMap,
    pub cone: Cone,
}

impl StarRel {
    pub fn new(psi: &Arc<DglMorphism>) -> Self {
        let der_lk = DerComplex::new(psi.clone());
        let der_ll = if psi.is_identity() {
            DerComplex::new(psi.clone())
        } else {
            DerComplex::new(Arc::new(DglMorphism::identity(psi.source().clone())))
        };
        let psi_star = der_lk.push_forward_map(&der_ll);
        let cone = Cone::new(&psi_star, der_ll.complex(), der_lk.complex());
        StarRel {
            der_lk,
            der_ll,
            psi_star,
            cone,
        }
    }

    /// The pair `(theta_1, theta_2)` behind a cone vector of degree `n`.
    pub fn pair(&self, n: i32, x: &SparseVec<usize>) -> (GenDerivation, GenDerivation) {
        let (a, b) = self.cone.split(n, x);
        (self.der_lk.derivation(n, &a), self.der_ll.derivation(n - 1, &b))
    }
}

/// `(ad_psi, ad): Rel(psi) -> Rel(psi_*)`.
pub fn pair_map(rel: &Cone, star: &StarRel) -> ChainMap {
    let ad_psi = star.der_lk.adjoint_map();
    let ad = star.der_ll.adjoint_map();
    ChainMap::cone_pair(&ad_psi, &ad, rel, &star.cone)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesSpace {
    Source,
    Target,
    Rel,
}

impl fmt::Display for LesSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LesSpace::Source => "source",
            LesSpace::Target => "target",
            LesSpace::Rel => "rel",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LesNode {
    pub space: LesSpace,
    pub degree: i32,
    pub trusted: bool,
    pub check: ExactnessCheck,
}

#[derive(Clone, Debug, Default)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
}

impl LesReport {
    pub fn trusted_nodes(&self) -> impl Iterator<Item = &LesNode> {
        self.nodes.iter().filter(|n| n.trusted)
    }

    /// Exact at every trusted node.
    pub fn exact(&self) -> bool {
        self.trusted_nodes().all(|n| n.check.exact)
    }
}

/// Builds the long exact sequence of `phi: V -> W` and checks exactness at every node
/// whose neighbouring homology groups are all materialized.
pub fn assemble_les(phi: &ChainMap, v: &GradedComplex, w: &GradedComplex) -> LesReport {
    let cone = Cone::new(phi, v, w);
    let rel = &cone.complex;
    let j = cone.j_map();
    let p = cone.p_map();
    let h_v = |n: i32| n <= v.hi();
    let h_w = |n: i32| n <= w.hi();
    let h_r = |n: i32| n <= rel.hi();
    let hphi = |n: i32| map_or_zero(phi, v, w, n);
    let hj = |n: i32| map_or_zero(&j, w, rel, n);
    let hp = |n: i32| map_or_zero(&p, rel, v, n);
    let dim = |c: &GradedComplex, n: i32| if n < c.lo() { 0 } else { c.homology(n).dim() };
    let lo = v.lo().min(w.lo()).min(rel.lo());
    let mut nodes = Vec::new();
    for n in lo..=rel.hi() {
        // H_n(V): in from H_{n+1}(Rel), out to H_n(W)
        if h_r(n + 1) && h_v(n) && h_w(n) {
            nodes.push(LesNode {
                space: LesSpace::Source,
                degree: n,
                trusted: rel.trusted(n + 1) && v.trusted(n) && w.trusted(n),
                check: exact_at(&hp(n + 1), &hphi(n), dim(v, n)),
            });
        }
        // H_n(W): in from H_n(V), out to H_n(Rel)
        if h_v(n) && h_w(n) && h_r(n) {
            nodes.push(LesNode {
                space: LesSpace::Target,
                degree: n,
                trusted: v.trusted(n) && w.trusted(n) && rel.trusted(n),
                check: exact_at(&hphi(n), &hj(n), dim(w, n)),
            });
        }
        // H_n(Rel): in from H_n(W), out to H_{n-1}(V)
        if h_w(n) && h_r(n) && h_v(n - 1) {
            nodes.push(LesNode {
                space: LesSpace::Rel,
                degree: n,
                trusted: w.trusted(n) && rel.trusted(n) && v.trusted(n - 1),
                check: exact_at(&hj(n), &hp(n), dim(rel, n)),
            });
        }
    }
    LesReport { nodes }
}

/// `H_n(f)`, or the zero matrix between the right homology groups when the
/// source degree lies below the map's window.
fn map_or_zero(f: &ChainMap, src: &GradedComplex, dst: &GradedComplex, n: i32) -> RationalMatrix {
    let m = n + f.shift();
    let rows = if m < dst.lo() { 0 } else { dst.homology(m).dim() };
    let cols = if n < src.lo() { 0 } else { src.homology(n).dim() };
    if f.matrix(n).is_none() || rows == 0 || cols == 0 {
        return RationalMatrix::zero(rows, cols);
    }
    f.induced(src, dst, n)
}

/// Long exact sequence of `H(psi)`.
pub fn les_of_morphism(psi: &DglMorphism) -> LesReport {
    assemble_les(psi.chain_map(), psi.source().complex(), psi.target().complex())
}

/// Long exact sequence of `H(ad_psi): H(K) -> H(Der(L, K; psi))`.
pub fn les_of_adjoint(psi: &Arc<DglMorphism>) -> LesReport {
    let der = DerComplex::new(psi.clone());
    let ad = der.adjoint_map();
    let k = psi.target().complex();
    // restrict K to the window on which ad is defined
    let kw = restrict(k, ad.hi());
    assemble_les(&ad, &kw, der.complex())
}

/// Long exact sequence of `H(psi_*): H(Der(L, L)) -> H(Der(L, K; psi))`.
pub fn les_of_push_forward(psi: &Arc<DglMorphism>) -> LesReport {
    let star = StarRel::new(psi);
    assemble_les(&star.psi_star, star.der_ll.complex(), star.der_lk.complex())
}

/// The same complex cut off above degree `hi`.
pub fn restrict(c: &GradedComplex, hi: i32) -> GradedComplex {
    let hi = hi.min(c.hi());
    let dims = (c.lo()..=hi).map(|n| c.dim(n)).collect();
    let diffs = (c.lo()..=hi).map(|n| c.diff(n)).collect();
    GradedComplex::new(c.lo(), dims, diffs)
}
