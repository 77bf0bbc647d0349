//! Exact linear algebra over the rationals.
//!
//! Two layers live here. [`SparseVec`] and [`Echelon`] form an incremental
//! reducer over arbitrary ordered keys (words of the tensor algebra, basis
//! indices, ...), tracking how each echelon row was combined from the inserted
//! vectors. [`RationalMatrix`] offers the classical matrix operations; its
//! elimination is fraction-free (rows are kept primitive over the integers)
//! with a final rational normalization into reduced row echelon form.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::rational::Q;

/// Sparse vector: strictly increasing keys, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K = usize> {
    entries: Vec<(K, Q)>,
}

impl<K: Ord + Clone> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted `(key, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, Q)>) -> Self {
        let mut map: BTreeMap<K, Q> = BTreeMap::new();
        for (k, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let e = map.entry(k).or_insert_with(Q::zero);
            *e += &v;
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<K, Q>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn unit(k: K) -> Self {
        SparseVec {
            entries: vec![(k, Q::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.entries.iter().map(|(k, v)| (k, v))
    }

    pub fn get(&self, k: &K) -> Q {
        match self.entries.binary_search_by(|(x, _)| x.cmp(k)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(&K, &Q)> {
        self.entries.first().map(|(k, v)| (k, v))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left = j >= other.entries.len()
                || (i < self.entries.len() && self.entries[i].0 < other.entries[j].0);
            let take_right = i >= self.entries.len()
                || (j < other.entries.len() && other.entries[j].0 < self.entries[i].0);
            if take_left {
                out.push(self.entries[i].clone());
                i += 1;
            } else if take_right {
                out.push((other.entries[j].0.clone(), c * &other.entries[j].1));
                j += 1;
            } else {
                let v = &self.entries[i].1 + &(c * &other.entries[j].1);
                if !v.is_zero() {
                    out.push((self.entries[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&Q::from_int(-1), other)
    }

    pub fn into_entries(self) -> Vec<(K, Q)> {
        self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> SparseVec<L> {
        SparseVec::from_pairs(self.entries.iter().map(|(k, v)| (f(k), v.clone())))
    }
}

impl SparseVec<usize> {
    pub fn from_dense(v: &[Q]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (k, v) in &self.entries {
            out[*k] = v.clone();
        }
        out
    }

    pub fn shift(&self, by: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }

    /// Entries with key in `[lo, hi)`, re-based to start at zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| *k >= lo && *k < hi)
                .map(|(k, v)| (k - lo, v.clone()))
                .collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Q {
        let mut acc = Q::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            match self.entries[i].0.cmp(&other.entries[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&self.entries[i].1 * &other.entries[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

/// Linear combination `sum_i coeffs[i] * vecs[i]`.
pub fn combine<K: Ord + Clone>(coeffs: &SparseVec<usize>, vecs: &[SparseVec<K>]) -> SparseVec<K> {
    let mut acc = SparseVec::new();
    for (i, c) in coeffs.iter() {
        acc = acc.add_scaled(c, &vecs[*i]);
    }
    acc
}

#[derive(Clone, Debug)]
struct EchelonRow<K> {
    vec: SparseVec<K>,
    /// `vec == sum tag[i] * inserted[i]`.
    tag: SparseVec<usize>,
}

/// Incrementally built echelon basis of a subspace.
///
/// Each row is monic at its pivot (its smallest key). Rows are not
/// back-substituted; reduction walks keys in increasing order, so every pivot
/// is met before the entries a subtraction can introduce.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone + Hash = usize> {
    rows: Vec<EchelonRow<K>>,
    pivots: HashMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone + Hash> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
            inserted: 0,
        }
    }
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    /// What is left after subtracting everything in the span.
    pub residual: SparseVec<K>,
    /// `v - residual == sum combo[i] * inserted[i]`.
    pub combo: SparseVec<usize>,
}

impl<K: Ord + Clone + Hash> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (dependent ones included).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let mut work: BTreeMap<K, Q> = v.iter().map(|(k, q)| (k.clone(), q.clone())).collect();
        let mut combo = SparseVec::new();
        let mut residual = Vec::new();
        while let Some((k, c)) = work.pop_first() {
            match self.pivots.get(&k) {
                Some(&r) => {
                    let row = &self.rows[r];
                    // row is monic at k; subtract c * row (its leading term cancels k)
                    for (rk, rv) in row.vec.iter().skip(1) {
                        let e = work.entry(rk.clone()).or_insert_with(Q::zero);
                        *e -= &(&c * rv);
                        if e.is_zero() {
                            work.remove(rk);
                        }
                    }
                    combo = combo.add_scaled(&c, &row.tag);
                }
                None => residual.push((k, c)),
            }
        }
        Reduction {
            residual: SparseVec { entries: residual },
            combo,
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Inserts `v`; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.residual.is_zero() {
            return false;
        }
        let (pk, pc) = {
            let (k, c) = red.residual.leading().unwrap();
            (k.clone(), c.clone())
        };
        let inv = pc.recip();
        let tag = SparseVec::unit(idx).add_scaled(&Q::from_int(-1), &red.combo).scale(&inv);
        let vec = red.residual.scale(&inv);
        self.pivots.insert(pk, self.rows.len());
        self.rows.push(EchelonRow { vec, tag });
        true
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let red = self.reduce(v);
        red.residual.is_zero().then_some(red.combo)
    }
}

/// Sparse rational matrix, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: Vec<SparseVec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec<usize>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&k| k < rows)));
        RationalMatrix { rows, cols }
    }

    pub fn from_dense_rows(rows: &[Vec<Q>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| SparseVec::from_pairs((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        RationalMatrix { rows: nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<usize> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<usize>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &SparseVec<usize>) -> SparseVec<usize> {
        combine(v, &self.cols)
    }

    /// `self * other`.
    pub fn compose(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.ncols(), other.nrows(), "compose: inner dimension mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[*i].push((j, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols.len(),
            cols: cols.into_iter().map(|e| SparseVec { entries: e }).collect(),
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<usize>> {
        self.transpose().cols
    }

    /// Reduced row echelon form; returns the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<SparseVec<usize>>, Vec<usize>) {
        rref_rows(self.row_vectors())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::<usize>::new();
        for c in &self.cols {
            e.insert(c);
        }
        e.rank()
    }

    /// Basis of the null space, one vector per free column (in increasing order).
    pub fn kernel_basis(&self) -> Vec<SparseVec<usize>> {
        let (rows, pivots) = self.rref();
        let n = self.ncols();
        let pivot_set: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut out = Vec::new();
        for free in 0..n {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut pairs = vec![(free, Q::one())];
            for (r, &pc) in pivots.iter().enumerate() {
                let v = rows[r].get(&free);
                if !v.is_zero() {
                    pairs.push((pc, -v));
                }
            }
            out.push(SparseVec::from_pairs(pairs));
        }
        out
    }

    /// Some `x` with `self * x == b`, or `None`.
    pub fn solve(&self, b: &SparseVec<usize>) -> Result<Option<SparseVec<usize>>, LinalgError> {
        if b.keys().any(|&k| k >= self.rows) {
            return Err(LinalgError::Dimension(format!(
                "right-hand side has entries beyond {} rows",
                self.rows
            )));
        }
        let n = self.ncols();
        let mut aug = self.row_vectors();
        for (i, v) in b.iter() {
            aug[*i] = aug[*i].add(&SparseVec::unit(n).scale(v));
        }
        let (rows, pivots) = rref_rows(aug);
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let sol = SparseVec::from_pairs(
            pivots
                .iter()
                .zip(&rows)
                .map(|(&pc, row)| (pc, row.get(&n))),
        );
        Ok(Some(sol))
    }
}

/// Fraction-free elimination to reduced row echelon form.
///
/// Rows are scaled to primitive integer vectors; eliminating column `c` from
/// row `r` with pivot row `p` replaces `r` by `p[c]*r - r[c]*p` followed by
/// division by the content. The final pass divides every row by its pivot.
/// Pivot choice: leftmost column first, smallest row index among candidates.
pub fn rref_rows(rows: Vec<SparseVec<usize>>) -> (Vec<SparseVec<usize>>, Vec<usize>) {
    let mut work: Vec<SparseVec<usize>> = rows
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| primitive(&r))
        .collect();
    let mut pivot_rows: Vec<SparseVec<usize>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        work.retain(|r| !r.is_zero());
        // leftmost column among remaining rows, smallest row index
        let Some((pi, pc)) = work
            .iter()
            .enumerate()
            .map(|(i, r)| (i, *r.leading().unwrap().0))
            .min_by_key(|&(i, c)| (c, i))
        else {
            break;
        };
        let p = work.remove(pi);
        let pv = p.get(&pc);
        for r in work.iter_mut() {
            let rv = r.get(&pc);
            if rv.is_zero() {
                continue;
            }
            let combined = r.scale(&pv).add_scaled(&-&rv, &p);
            *r = primitive(&combined);
        }
        pivot_rows.push(p);
        pivots.push(pc);
    }
    // back substitution, still fraction-free
    for i in (0..pivot_rows.len()).rev() {
        let pc = pivots[i];
        for j in 0..i {
            let rv = pivot_rows[j].get(&pc);
            if rv.is_zero() {
                continue;
            }
            let pv = pivot_rows[i].get(&pc);
            let combined = pivot_rows[j].scale(&pv).add_scaled(&-&rv, &pivot_rows[i]);
            pivot_rows[j] = primitive(&combined);
        }
    }
    let normalized = pivot_rows
        .iter()
        .zip(&pivots)
        .map(|(r, pc)| r.scale(&r.get(pc).recip()))
        .collect();
    (normalized, pivots)
}

/// Scales a vector to a primitive integer vector with positive leading entry.
fn primitive(v: &SparseVec<usize>) -> SparseVec<usize> {
    if v.is_zero() {
        return v.clone();
    }
    let mut lcm = Q::one();
    for (_, x) in v.iter() {
        let d = Q::from_bigint(x.denom());
        lcm = lcm.int_lcm(&d);
    }
    let ints = v.scale(&lcm);
    let mut g = Q::zero();
    for (_, x) in ints.iter() {
        g = g.int_gcd(x);
    }
    if ints.leading().unwrap().1.is_negative() {
        g = -g;
    }
    ints.scale(&g.recip())
}

/// Indices of a maximal independent subfamily of `vecs`, scanning in order.
pub fn independent_subset<K: Ord + Clone + Hash>(vecs: &[SparseVec<K>]) -> Vec<usize> {
    let mut e = Echelon::new();
    vecs.iter()
        .enumerate()
        .filter_map(|(i, v)| e.insert(v).then_some(i))
        .collect()
}

/// Representatives of `span(z) / span(b)`, chosen as the first members of `z`
/// that are independent modulo `b` and the representatives already chosen.
pub fn quotient_basis(
    z: &[SparseVec<usize>],
    b: &[SparseVec<usize>],
) -> Result<Vec<SparseVec<usize>>, LinalgError> {
    let mut zspan = Echelon::new();
    for v in z {
        zspan.insert(v);
    }
    if let Some(pos) = b.iter().position(|v| !zspan.contains(v)) {
        return Err(LinalgError::Precondition(format!(
            "vector {pos} of the subspace is not contained in the ambient space"
        )));
    }
    let mut e = Echelon::new();
    for v in b {
        e.insert(v);
    }
    Ok(z.iter().filter(|v| e.insert(v)).cloned().collect())
}

/// Basis of `span(a) ∩ span(b)`, expressed as vectors of the ambient space.
pub fn intersection_basis(a: &[SparseVec<usize>], b: &[SparseVec<usize>]) -> Vec<SparseVec<usize>> {
    // kernel of [A | -B]; each kernel vector gives sum x_i a_i = sum y_j b_j
    let ai = independent_subset(a);
    let bi = independent_subset(b);
    let mut cols: Vec<SparseVec<usize>> = ai.iter().map(|&i| a[i].clone()).collect();
    cols.extend(bi.iter().map(|&j| b[j].scale(&Q::from_int(-1))));
    let rows = cols
        .iter()
        .flat_map(|c| c.keys().copied())
        .max()
        .map_or(0, |m| m + 1);
    let m = RationalMatrix::from_columns(rows, cols);
    let na = ai.len();
    m.kernel_basis()
        .iter()
        .map(|k| {
            let xs = k.slice(0, na);
            combine(&xs, &ai.iter().map(|&i| a[i].clone()).collect::<Vec<_>>())
        })
        .collect()
}
