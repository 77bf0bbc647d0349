//! Finite graded chain complexes of rational vector spaces.
//!
//! A complex is materialized on a degree window `[lo, hi]` with differentials
//! `d_n: C_n -> C_{n-1}`. `lo` must be the true bottom (`C_{lo-1} = 0`), while
//! `hi` is wherever truncation stopped. Homology in degree `n` needs `d_{n+1}`,
//! so it is trusted only for `n < hi`.

use std::sync::OnceLock;

use crate::linalg::{quotient_basis, Echelon, RationalMatrix, SparseVec};
use crate::rational::Q;

/// Homology of a complex in one degree, with deterministic representatives.
#[derive(Debug)]
pub struct HomologyGroup {
    pub degree: i32,
    pub trusted: bool,
    pub cycle_dim: usize,
    pub boundary_dim: usize,
    reps: Vec<SparseVec<usize>>,
    reducer: Echelon<usize>,
    nbound: usize,
}

impl HomologyGroup {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Cycles whose classes form a basis.
    pub fn reps(&self) -> &[SparseVec<usize>] {
        &self.reps
    }

    /// Coordinates of the class of `z` in the basis of representatives,
    /// or `None` when `z` is not a cycle.
    pub fn class_of(&self, z: &SparseVec<usize>) -> Option<SparseVec<usize>> {
        let combo = self.reducer.express(z)?;
        Some(combo.slice(self.nbound, self.nbound + self.reps.len()))
    }

    /// The cycle with the given class coordinates.
    pub fn cycle(&self, coords: &SparseVec<usize>) -> SparseVec<usize> {
        crate::linalg::combine(coords, &self.reps)
    }
}

/// Chain complex materialized on `[lo, hi]`.
#[derive(Debug)]
pub struct GradedComplex {
    lo: i32,
    hi: i32,
    dims: Vec<usize>,
    diffs: Vec<RationalMatrix>,
    homology: Vec<OnceLock<HomologyGroup>>,
}

impl GradedComplex {
    /// `diffs[k]` is `d_{lo+k}`; its row count must be `dim C_{lo+k-1}` (0 at the bottom).
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<RationalMatrix>) -> Self {
        assert_eq!(dims.len(), diffs.len());
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.ncols(), dims[k], "d_{} has the wrong source dimension", lo + k as i32);
            let below = if k == 0 { 0 } else { dims[k - 1] };
            assert_eq!(d.nrows(), below, "d_{} has the wrong target dimension", lo + k as i32);
        }
        let hi = lo + dims.len() as i32 - 1;
        let homology = (0..dims.len()).map(|_| OnceLock::new()).collect();
        GradedComplex {
            lo,
            hi,
            dims,
            diffs,
            homology,
        }
    }

    /// The zero complex.
    pub fn empty(lo: i32, hi: i32) -> Self {
        let len = (hi - lo + 1).max(0) as usize;
        GradedComplex::new(lo, vec![0; len], vec![RationalMatrix::zero(0, 0); len])
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn in_range(&self, n: i32) -> bool {
        n >= self.lo && n <= self.hi
    }

    /// Whether homology in degree `n` is unaffected by truncation.
    pub fn trusted(&self, n: i32) -> bool {
        n < self.lo || n < self.hi
    }

    /// Dimension of `C_n`; zero below the window. Panics above it.
    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo {
            return 0;
        }
        assert!(n <= self.hi, "degree {n} is above the materialized window");
        self.dims[(n - self.lo) as usize]
    }

    /// `d_n: C_n -> C_{n-1}`.
    pub fn diff(&self, n: i32) -> RationalMatrix {
        if n < self.lo {
            return RationalMatrix::zero(self.dim(n - 1), 0);
        }
        self.diffs[(n - self.lo) as usize].clone()
    }

    fn diff_ref(&self, n: i32) -> Option<&RationalMatrix> {
        self.in_range(n).then(|| &self.diffs[(n - self.lo) as usize])
    }

    pub fn apply_diff(&self, n: i32, v: &SparseVec<usize>) -> SparseVec<usize> {
        match self.diff_ref(n) {
            Some(d) => d.apply(v),
            None => SparseVec::new(),
        }
    }

    /// `d_{n-1} d_n = 0` everywhere in the window.
    pub fn is_complex(&self) -> bool {
        (self.lo + 1..=self.hi).all(|n| {
            let a = self.diff_ref(n - 1).unwrap();
            let b = self.diff_ref(n).unwrap();
            a.compose(b).is_zero()
        })
    }

    pub fn homology(&self, n: i32) -> &HomologyGroup {
        static EMPTY: OnceLock<HomologyGroup> = OnceLock::new();
        if n < self.lo {
            return EMPTY.get_or_init(|| HomologyGroup {
                degree: 0,
                trusted: true,
                cycle_dim: 0,
                boundary_dim: 0,
                reps: Vec::new(),
                reducer: Echelon::new(),
                nbound: 0,
            });
        }
        assert!(n <= self.hi, "homology in degree {n} is above the materialized window");
        self.homology[(n - self.lo) as usize].get_or_init(|| self.compute_homology(n))
    }

    fn compute_homology(&self, n: i32) -> HomologyGroup {
        let cycles = self.diff_ref(n).unwrap().kernel_basis();
        let boundaries: Vec<SparseVec<usize>> = match self.diff_ref(n + 1) {
            Some(d) => d.columns().iter().filter(|c| !c.is_zero()).cloned().collect(),
            None => Vec::new(),
        };
        let reps = quotient_basis(&cycles, &boundaries).expect("boundaries are cycles");
        let mut reducer = Echelon::new();
        for b in &boundaries {
            reducer.insert(b);
        }
        let boundary_dim = reducer.rank();
        let nbound = boundaries.len();
        for r in &reps {
            reducer.insert(r);
        }
        HomologyGroup {
            degree: n,
            trusted: self.trusted(n),
            cycle_dim: cycles.len(),
            boundary_dim,
            reps,
            reducer,
            nbound,
        }
    }

    /// Some `x` with `d_{n+1} x = z`, if `z` is a boundary.
    pub fn preimage(&self, n: i32, z: &SparseVec<usize>) -> Option<SparseVec<usize>> {
        if z.is_zero() {
            return Some(SparseVec::new());
        }
        let d = self.diff_ref(n + 1)?;
        d.solve(z).expect("dimensions agree")
    }
}

/// Linear map between complexes, `C_n -> D_{n+shift}` on a window of source degrees.
#[derive(Clone, Debug)]
pub struct ChainMap {
    shift: i32,
    lo: i32,
    mats: Vec<RationalMatrix>,
}

impl ChainMap {
    pub fn new(shift: i32, lo: i32, mats: Vec<RationalMatrix>) -> Self {
        ChainMap { shift, lo, mats }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.mats.len() as i32 - 1
    }

    pub fn matrix(&self, n: i32) -> Option<&RationalMatrix> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        Some(&self.mats[(n - self.lo) as usize])
    }

    pub fn apply(&self, n: i32, v: &SparseVec<usize>) -> SparseVec<usize> {
        if v.is_zero() {
            return SparseVec::new();
        }
        self.matrix(n)
            .unwrap_or_else(|| panic!("map undefined in degree {n}"))
            .apply(v)
    }

    /// Checks `d_D f = sign * f d_C` for every degree in which both sides are defined.
    pub fn commutes(&self, src: &GradedComplex, dst: &GradedComplex, sign: i64) -> bool {
        let s = Q::from_int(sign);
        for n in self.lo..=self.hi() {
            if !src.in_range(n) || !dst.in_range(n + self.shift) {
                continue;
            }
            let f = self.matrix(n).unwrap();
            let lhs = dst.diff(n + self.shift).compose(f);
            let below = if src.in_range(n - 1) && self.matrix(n - 1).is_some() {
                self.matrix(n - 1).unwrap().compose(&src.diff(n))
            } else if src.dim(n - 1) == 0 {
                RationalMatrix::zero(lhs.nrows(), lhs.ncols())
            } else {
                continue;
            };
            for j in 0..lhs.ncols() {
                if lhs.column(j) != &below.column(j).scale(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix of the induced map `H_n(C) -> H_{n+shift}(D)` in class coordinates.
    pub fn induced(&self, src: &GradedComplex, dst: &GradedComplex, n: i32) -> RationalMatrix {
        let hs = src.homology(n);
        let ht = dst.homology(n + self.shift);
        let cols = hs
            .reps()
            .iter()
            .map(|r| {
                let img = self.apply(n, r);
                ht.class_of(&img).expect("chain map sends cycles to cycles")
            })
            .collect();
        RationalMatrix::from_columns(ht.dim(), cols)
    }

    /// Block map `(w, v) -> (f w, g v)` between two cones.
    pub fn cone_pair(
        f: &ChainMap,
        g: &ChainMap,
        src: &Cone,
        dst: &Cone,
    ) -> ChainMap {
        assert_eq!(f.shift, 0);
        assert_eq!(g.shift, 0);
        let lo = src.complex.lo();
        let hi = src.complex.hi().min(dst.complex.hi());
        let mats = (lo..=hi)
            .map(|n| {
                let cols = (0..src.complex.dim(n))
                    .map(|j| {
                        let (w, v) = src.split(n, &SparseVec::unit(j));
                        let fw = if w.is_zero() { w } else { f.apply(n, &w) };
                        let gv = if v.is_zero() { v } else { g.apply(n - 1, &v) };
                        dst.join(n, &fw, &gv)
                    })
                    .collect();
                RationalMatrix::from_columns(dst.complex.dim(n), cols)
            })
            .collect();
        ChainMap::new(0, lo, mats)
    }
}

/// Rank of each induced map around a node and the exactness verdict there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

/// Exactness of `X --a--> Y --b--> Z` at `Y`, given `a` and `b` in coordinates.
pub fn exact_at(a: &RationalMatrix, b: &RationalMatrix, dim_y: usize) -> ExactnessCheck {
    let composite_zero = b.ncols() == 0 || a.ncols() == 0 || b.compose(a).is_zero();
    let rank_in = a.rank();
    let rank_out = b.rank();
    ExactnessCheck {
        dim: dim_y,
        rank_in,
        rank_out,
        composite_zero,
        exact: composite_zero && rank_in + rank_out == dim_y,
    }
}

/// Mapping cone of a degree-0 chain map `phi: V -> W`:
/// `Rel_n = W_n + V_{n-1}`, `delta(w, v) = (phi v - d w, d v)`.
#[derive(Debug)]
pub struct Cone {
    pub complex: GradedComplex,
    /// `dim W_n` for each degree of the cone window; the `V` block follows.
    w_dims: Vec<usize>,
}

impl Cone {
    pub fn new(phi: &ChainMap, v: &GradedComplex, w: &GradedComplex) -> Cone {
        assert_eq!(phi.shift(), 0, "cone of a map of nonzero degree");
        let lo = w.lo().min(v.lo() + 1);
        let hi = w.hi().min(v.hi() + 1);
        let wd = |n: i32| if n < w.lo() { 0 } else { w.dim(n) };
        let vd = |n: i32| if n < v.lo() { 0 } else { v.dim(n) };
        let mut dims = Vec::new();
        let mut w_dims = Vec::new();
        for n in lo..=hi {
            dims.push(wd(n) + vd(n - 1));
            w_dims.push(wd(n));
        }
        let mut diffs = Vec::new();
        for n in lo..=hi {
            let mut cols = Vec::new();
            let off_below = wd(n - 1);
            for j in 0..wd(n) {
                let dw = w.apply_diff(n, &SparseVec::unit(j));
                cols.push(dw.scale(&Q::from_int(-1)));
            }
            for j in 0..vd(n - 1) {
                let e = SparseVec::unit(j);
                let pv = phi.apply(n - 1, &e);
                let dv = v.apply_diff(n - 1, &e);
                cols.push(pv.add(&dv.shift(off_below)));
            }
            let rows = if n == lo { 0 } else { wd(n - 1) + vd(n - 2) };
            diffs.push(RationalMatrix::from_columns(rows, cols));
        }
        Cone {
            complex: GradedComplex::new(lo, dims, diffs),
            w_dims,
        }
    }

    fn w_dim(&self, n: i32) -> usize {
        if n < self.complex.lo() {
            0
        } else {
            self.w_dims[(n - self.complex.lo()) as usize]
        }
    }

    /// Splits a vector of `Rel_n` into its `W_n` and `V_{n-1}` parts.
    pub fn split(&self, n: i32, x: &SparseVec<usize>) -> (SparseVec<usize>, SparseVec<usize>) {
        let k = self.w_dim(n);
        (x.slice(0, k), x.slice(k, usize::MAX))
    }

    pub fn join(&self, n: i32, w: &SparseVec<usize>, v: &SparseVec<usize>) -> SparseVec<usize> {
        w.add(&v.shift(self.w_dim(n)))
    }

    /// `J(w) = (w, 0)`.
    pub fn j_map(&self) -> ChainMap {
        let (lo, hi) = (self.complex.lo(), self.complex.hi());
        let mats = (lo..=hi)
            .map(|n| {
                let k = self.w_dim(n);
                RationalMatrix::from_columns(self.complex.dim(n), (0..k).map(SparseVec::unit).collect())
            })
            .collect();
        ChainMap::new(0, lo, mats)
    }

    /// `P(w, v) = v`, of degree -1.
    pub fn p_map(&self) -> ChainMap {
        let (lo, hi) = (self.complex.lo(), self.complex.hi());
        let mats = (lo..=hi)
            .map(|n| {
                let k = self.w_dim(n);
                let vdim = self.complex.dim(n) - k;
                let cols = (0..self.complex.dim(n))
                    .map(|j| if j < k { SparseVec::new() } else { SparseVec::unit(j - k) })
                    .collect();
                RationalMatrix::from_columns(vdim, cols)
            })
            .collect();
        ChainMap::new(-1, lo, mats)
    }
}
