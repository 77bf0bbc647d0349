//! Free graded Lie algebras over the rationals.
//!
//! Elements are stored through the embedding into the free associative algebra,
//! `[a,b] -> ab - (-1)^{|a||b|} ba`. That embedding is injective in
//! characteristic zero, so equality and linear algebra on Lie elements become
//! sparse vector arithmetic on words.

use std::collections::HashMap;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::linalg::{Echelon, SparseVec};
use crate::rational::Q;

/// Index of a generator inside its [`FreeLie`].
pub type Letter = u16;

/// A word in the generators, i.e. a basis element of the tensor algebra.
pub type Word = SmallVec<[Letter; 8]>;

/// Element of the tensor algebra.
pub type TensorPoly = SparseVec<Word>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("degree {degree} exceeds the truncation degree {max}")]
    Truncation { degree: i32, max: i32 },
    #[error("degree mismatch in {context}: expected {expected}, found {found}")]
    DegreeMismatch {
        context: String,
        expected: i32,
        found: i32,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: String },
    #[error("element of degree {0} is not in the span of the Lie basis")]
    NotInSpan(i32),
}

/// A free generator: name, internal degree and optional upper degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub upper: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator {
            name: name.into(),
            degree,
            upper: None,
        }
    }

    pub fn with_upper(mut self, upper: u32) -> Self {
        self.upper = Some(upper);
        self
    }
}

/// Homogeneous element of a free graded Lie algebra.
///
/// The zero element carries a degree too, so that sums stay homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    degree: i32,
    poly: TensorPoly,
}

impl LieElement {
    pub fn zero(degree: i32) -> Self {
        LieElement {
            degree,
            poly: SparseVec::new(),
        }
    }

    pub(crate) fn from_poly(degree: i32, poly: TensorPoly) -> Self {
        LieElement { degree, poly }
    }

    pub(crate) fn letter(l: Letter, degree: i32) -> Self {
        let w: Word = SmallVec::from_slice(&[l]);
        LieElement {
            degree,
            poly: SparseVec::unit(w),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The tensor-algebra expansion.
    pub fn terms(&self) -> &TensorPoly {
        &self.poly
    }

    /// Sum; fails when both sides are nonzero and of different degrees.
    pub fn try_add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.try_add_scaled(&Q::one(), other)
    }

    /// `self + c * other`, with the same degree rule as [`LieElement::try_add`].
    pub fn try_add_scaled(&self, c: &Q, other: &LieElement) -> Result<LieElement, LieError> {
        if other.is_zero() || c.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(c));
        }
        if self.degree != other.degree {
            return Err(LieError::DegreeMismatch {
                context: "sum".into(),
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(LieElement {
            degree: self.degree,
            poly: self.poly.add_scaled(c, &other.poly),
        })
    }

    /// Panicking variant of [`LieElement::try_add_scaled`] for internal use.
    pub fn add_scaled(&self, c: &Q, other: &LieElement) -> LieElement {
        self.try_add_scaled(c, other)
            .unwrap_or_else(|e| panic!("inhomogeneous sum: {e}"))
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        LieElement {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }

    /// Same element, relabelled to `degree` when zero. Panics if nonzero and the degree differs.
    pub fn with_degree(mut self, degree: i32) -> LieElement {
        assert!(
            self.is_zero() || self.degree == degree,
            "element of degree {} used where degree {degree} is required",
            self.degree
        );
        self.degree = degree;
        self
    }
}

impl std::ops::Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        self.add_scaled(&Q::one(), rhs)
    }
}

impl std::ops::Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self.add_scaled(&Q::from_int(-1), rhs)
    }
}

impl std::ops::Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&Q::from_int(-1))
    }
}

/// Hash-based accumulator for tensor polynomials.
#[derive(Default)]
pub(crate) struct Accum(HashMap<Word, Q>);

impl Accum {
    pub(crate) fn push(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub(crate) fn finish(self) -> TensorPoly {
        SparseVec::from_pairs(self.0)
    }
}

/// Product in the tensor algebra.
pub fn tensor_mul(a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    let mut acc = Accum::default();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            acc.push(w, x * y);
        }
    }
    acc.finish()
}

/// Graded bracket, without any truncation check.
pub fn bracket(a: &LieElement, b: &LieElement) -> LieElement {
    let degree = a.degree + b.degree;
    if a.is_zero() || b.is_zero() {
        return LieElement::zero(degree);
    }
    let ab = tensor_mul(&a.poly, &b.poly);
    let ba = tensor_mul(&b.poly, &a.poly);
    let sign = -Q::sign((a.degree as i64) * (b.degree as i64));
    LieElement {
        degree,
        poly: ab.add_scaled(&sign, &ba),
    }
}

/// Applies the algebra map sending letter `l` to `images[l]`.
pub(crate) fn apply_hom(poly: &TensorPoly, images: &[TensorPoly]) -> TensorPoly {
    let mut acc = Accum::default();
    for (w, c) in poly.iter() {
        let mut cur = SparseVec::unit(Word::new());
        for &l in w.iter() {
            cur = tensor_mul(&cur, &images[l as usize]);
            if cur.is_zero() {
                break;
            }
        }
        for (u, x) in cur.iter() {
            acc.push(u.clone(), c * x);
        }
    }
    acc.finish()
}

/// Applies the degree-`deg` derivation along an algebra map.
///
/// `values[l]` is the value on letter `l`; `along` gives the images of letters
/// under the map (`None` for the identity). A word `x_1..x_k` goes to
/// `sum_i (-1)^{deg(|x_1|+..+|x_{i-1}|)} psi(x_1)..theta(x_i)..psi(x_k)`.
pub(crate) fn apply_derivation(
    poly: &TensorPoly,
    letter_degrees: &[i32],
    deg: i32,
    values: &[TensorPoly],
    along: Option<&[TensorPoly]>,
) -> TensorPoly {
    let mut acc = Accum::default();
    for (w, c) in poly.iter() {
        match along {
            None => {
                let mut prefix_deg: i64 = 0;
                for (i, &l) in w.iter().enumerate() {
                    let s = Q::sign(deg as i64 * prefix_deg);
                    prefix_deg += letter_degrees[l as usize] as i64;
                    let coeff = c * &s;
                    for (v, x) in values[l as usize].iter() {
                        let mut out: Word = SmallVec::from_slice(&w[..i]);
                        out.extend_from_slice(v);
                        out.extend_from_slice(&w[i + 1..]);
                        acc.push(out, &coeff * x);
                    }
                }
            }
            Some(images) => {
                let k = w.len();
                // suffix[i] = psi(x_i)..psi(x_{k-1})
                let mut suffix = vec![SparseVec::unit(Word::new()); k + 1];
                for i in (0..k).rev() {
                    suffix[i] = tensor_mul(&images[w[i] as usize], &suffix[i + 1]);
                }
                let mut prefix = SparseVec::unit(Word::new());
                let mut prefix_deg: i64 = 0;
                for (i, &l) in w.iter().enumerate() {
                    let s = Q::sign(deg as i64 * prefix_deg);
                    let term = tensor_mul(&tensor_mul(&prefix, &values[l as usize]), &suffix[i + 1]);
                    let coeff = c * &s;
                    for (u, x) in term.iter() {
                        acc.push(u.clone(), &coeff * x);
                    }
                    prefix_deg += letter_degrees[l as usize] as i64;
                    prefix = tensor_mul(&prefix, &images[l as usize]);
                    if prefix.is_zero() {
                        break;
                    }
                }
            }
        }
    }
    acc.finish()
}

/// Bracket monomial in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    Gen(usize),
    Bracket(Box<Monomial>, Box<Monomial>),
}

/// Basis of one degree of a free Lie algebra.
#[derive(Debug)]
pub struct DegreeBasis {
    degree: i32,
    monomials: Vec<Monomial>,
    elements: Vec<LieElement>,
    uppers: Vec<u32>,
    reducer: Echelon<Word>,
    /// Insertion index into `reducer` -> basis index, for independent candidates.
    slots: Vec<Option<usize>>,
}

impl DegreeBasis {
    fn empty(degree: i32) -> Self {
        DegreeBasis {
            degree,
            monomials: Vec::new(),
            elements: Vec::new(),
            uppers: Vec::new(),
            reducer: Echelon::new(),
            slots: Vec::new(),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn elements(&self) -> &[LieElement] {
        &self.elements
    }

    /// Upper degree of each basis monomial (missing upper degrees count as 0).
    pub fn uppers(&self) -> &[u32] {
        &self.uppers
    }
}

/// Upper-degree profile of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Upper {
    Zero,
    Pure(u32),
    Mixed,
}

/// A free graded Lie algebra `L(V)` truncated at degree `max_degree`.
#[derive(Debug)]
pub struct FreeLie {
    gens: Vec<Generator>,
    letter_degrees: Vec<i32>,
    max_degree: i32,
    bases: Vec<OnceLock<DegreeBasis>>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl FreeLie {
    pub fn new(gens: Vec<Generator>, max_degree: i32) -> Result<Self, LieError> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if !valid_identifier(&g.name) {
                return Err(LieError::InvalidGenerator {
                    name: g.name.clone(),
                    reason: "not an identifier".into(),
                });
            }
            if g.degree < 1 {
                return Err(LieError::InvalidGenerator {
                    name: g.name.clone(),
                    reason: format!("degree {} is not positive", g.degree),
                });
            }
            if g.degree > max_degree {
                return Err(LieError::Truncation {
                    degree: g.degree,
                    max: max_degree,
                });
            }
            if !seen.insert(g.name.clone()) {
                return Err(LieError::DuplicateGenerator(g.name.clone()));
            }
        }
        assert!(gens.len() <= Letter::MAX as usize, "too many generators");
        let letter_degrees = gens.iter().map(|g| g.degree).collect();
        let bases = (0..=max_degree.max(0)).map(|_| OnceLock::new()).collect();
        Ok(FreeLie {
            gens,
            letter_degrees,
            max_degree,
            bases,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    pub fn letter_degrees(&self) -> &[i32] {
        &self.letter_degrees
    }

    pub fn max_generator_degree(&self) -> i32 {
        self.letter_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_generator_degree(&self) -> i32 {
        self.letter_degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// True when every generator carries an upper degree.
    pub fn is_bigraded(&self) -> bool {
        !self.gens.is_empty() && self.gens.iter().all(|g| g.upper.is_some())
    }

    /// The generator with index `i` as an element.
    pub fn gen(&self, i: usize) -> LieElement {
        LieElement::letter(i as Letter, self.gens[i].degree)
    }

    pub fn gen_by_name(&self, name: &str) -> Result<LieElement, LieError> {
        self.index_of(name)
            .map(|i| self.gen(i))
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    /// Graded bracket, rejecting results above the truncation degree.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
        let degree = a.degree + b.degree;
        if degree > self.max_degree {
            return Err(LieError::Truncation {
                degree,
                max: self.max_degree,
            });
        }
        Ok(bracket(a, b))
    }

    /// Basis in degree `n`, computed on first use.
    pub fn degree_basis(&self, n: i32) -> Result<&DegreeBasis, LieError> {
        if n > self.max_degree {
            return Err(LieError::Truncation {
                degree: n,
                max: self.max_degree,
            });
        }
        Ok(self.basis(n))
    }

    /// Like [`FreeLie::degree_basis`] but panics above the truncation degree.
    pub fn basis(&self, n: i32) -> &DegreeBasis {
        static EMPTY: OnceLock<DegreeBasis> = OnceLock::new();
        if n < 1 {
            return EMPTY.get_or_init(|| DegreeBasis::empty(0));
        }
        assert!(
            n <= self.max_degree,
            "degree {n} exceeds the truncation degree {}",
            self.max_degree
        );
        self.bases[n as usize].get_or_init(|| self.compute_basis(n))
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).dim()
    }

    fn compute_basis(&self, n: i32) -> DegreeBasis {
        let mut b = DegreeBasis::empty(n);
        let consider = |b: &mut DegreeBasis, m: Monomial, e: LieElement, upper: u32| {
            let independent = b.reducer.insert(&e.poly);
            b.slots.push(independent.then_some(b.elements.len()));
            if independent {
                b.monomials.push(m);
                b.elements.push(e);
                b.uppers.push(upper);
            }
        };
        for (i, g) in self.gens.iter().enumerate() {
            if g.degree == n {
                consider(&mut b, Monomial::Gen(i), self.gen(i), g.upper.unwrap_or(0));
            }
        }
        for k in 1..n {
            let left = self.basis(k);
            for (lm, (le, lu)) in left
                .monomials
                .iter()
                .zip(left.elements.iter().zip(&left.uppers))
            {
                for (j, g) in self.gens.iter().enumerate() {
                    if g.degree != n - k {
                        continue;
                    }
                    let e = bracket(le, &self.gen(j));
                    if e.is_zero() {
                        continue;
                    }
                    let m = Monomial::Bracket(Box::new(lm.clone()), Box::new(Monomial::Gen(j)));
                    consider(&mut b, m, e, lu + g.upper.unwrap_or(0));
                }
            }
        }
        b
    }

    /// Coordinates of a homogeneous element in the basis of its degree.
    pub fn coordinates(&self, e: &LieElement) -> Result<SparseVec<usize>, LieError> {
        if e.is_zero() {
            return Ok(SparseVec::new());
        }
        let basis = self.degree_basis(e.degree)?;
        let combo = basis
            .reducer
            .express(&e.poly)
            .ok_or(LieError::NotInSpan(e.degree))?;
        // only independent insertions ever appear in echelon tags
        Ok(combo.map_keys(|k| basis.slots[*k].expect("dependent candidate in echelon tag")))
    }

    /// The element with the given coordinates in degree `n`.
    pub fn element(&self, n: i32, coords: &SparseVec<usize>) -> LieElement {
        let basis = self.basis(n);
        let mut acc = SparseVec::new();
        for (i, c) in coords.iter() {
            acc = acc.add_scaled(c, &basis.elements[*i].poly);
        }
        LieElement::from_poly(n, acc)
    }

    pub fn monomial_element(&self, m: &Monomial) -> LieElement {
        match m {
            Monomial::Gen(i) => self.gen(*i),
            Monomial::Bracket(a, b) => bracket(&self.monomial_element(a), &self.monomial_element(b)),
        }
    }

    pub fn word_upper(&self, w: &[Letter]) -> u32 {
        w.iter()
            .map(|&l| self.gens[l as usize].upper.unwrap_or(0))
            .sum()
    }

    pub fn upper(&self, e: &LieElement) -> Upper {
        let mut found = None;
        for w in e.poly.keys() {
            let u = self.word_upper(w);
            match found {
                None => found = Some(u),
                Some(f) if f != u => return Upper::Mixed,
                _ => {}
            }
        }
        found.map_or(Upper::Zero, Upper::Pure)
    }

    /// The component of `e` in upper degree `u`.
    pub fn upper_part(&self, e: &LieElement, u: u32) -> LieElement {
        let poly = SparseVec::from_pairs(
            e.poly
                .iter()
                .filter(|(w, _)| self.word_upper(w) == u)
                .map(|(w, c)| (w.clone(), c.clone())),
        );
        LieElement::from_poly(e.degree, poly)
    }

    /// Value of the algebra map sending generator `i` to `images[i]`.
    pub fn apply_hom(&self, e: &LieElement, images: &[LieElement], degree_shift: i32) -> LieElement {
        let polys: Vec<TensorPoly> = images.iter().map(|x| x.poly.clone()).collect();
        LieElement::from_poly(e.degree + degree_shift, apply_hom(&e.poly, &polys))
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        match m {
            Monomial::Gen(i) => self.gens[*i].name.clone(),
            Monomial::Bracket(a, b) => {
                format!("[{},{}]", self.render_monomial(a), self.render_monomial(b))
            }
        }
    }

    /// Renders `e` as a combination of basis monomials, e.g. `2 [x,y] - 1/2 z`.
    pub fn render(&self, e: &LieElement) -> String {
        let coords = match self.coordinates(e) {
            Ok(c) => c,
            Err(_) => return format!("<element of degree {} outside the basis>", e.degree),
        };
        if coords.is_zero() {
            return "0".into();
        }
        let basis = self.basis(e.degree);
        let mut out = String::new();
        for (k, (i, c)) in coords.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !a.is_one() {
                out.push_str(&format!("{a} "));
            }
            out.push_str(&self.render_monomial(&basis.monomials[*i]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_gen(deg: i32) -> FreeLie {
        FreeLie::new(vec![Generator::new("x", deg)], 10).unwrap()
    }

    #[test]
    fn odd_square_survives() {
        let l = one_gen(1);
        let x = l.gen(0);
        let xx = l.bracket(&x, &x).unwrap();
        assert_eq!(xx.degree(), 2);
        let w: Word = SmallVec::from_slice(&[0, 0]);
        assert_eq!(xx.terms().get(&w), Q::from_int(2));
        assert!(l.bracket(&x, &xx).unwrap().is_zero());
    }

    #[test]
    fn even_square_vanishes() {
        let l = one_gen(2);
        let a = l.gen(0);
        assert!(l.bracket(&a, &a).unwrap().is_zero());
        assert_eq!(l.dim(4), 0);
    }

    #[test]
    fn small_bases() {
        assert_eq!(one_gen(1).dim(2), 1);
        assert_eq!(one_gen(1).dim(3), 0);
        let l = FreeLie::new(vec![Generator::new("x", 1), Generator::new("y", 1)], 6).unwrap();
        assert_eq!(l.dim(2), 3);
        let l = FreeLie::new(vec![Generator::new("a", 2), Generator::new("b", 2)], 6).unwrap();
        assert_eq!(l.dim(4), 1);
        assert_eq!(l.dim(6), 2);
    }

    #[test]
    fn truncation_is_enforced() {
        let l = one_gen(3);
        let x = l.gen(0);
        let xx = bracket(&x, &x);
        assert!(matches!(l.bracket(&xx, &xx), Err(LieError::Truncation { .. })));
        assert!(FreeLie::new(vec![Generator::new("z", 11)], 10).is_err());
    }

    #[test]
    fn odd_pair_coordinates() {
        let l = FreeLie::new(vec![Generator::new("x", 1), Generator::new("y", 1)], 4).unwrap();
        let (x, y) = (l.gen(0), l.gen(1));
        let xy = bracket(&x, &y);
        let yx = bracket(&y, &x);
        assert_eq!(xy, yx);
        let e = &xy.scale(&Q::from_int(3)) - &yx.scale(&Q::from_int(2));
        let c = l.coordinates(&e).unwrap();
        let cxy = l.coordinates(&xy).unwrap();
        assert_eq!(c, cxy.scale(&Q::from_int(1)));
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(FreeLie::new(vec![Generator::new("x", 0)], 4).is_err());
        assert!(FreeLie::new(vec![Generator::new("x", 1), Generator::new("x", 2)], 4).is_err());
        assert!(FreeLie::new(vec![Generator::new("1x", 1)], 4).is_err());
    }

    #[test]
    fn render_uses_basis_monomials() {
        let l = FreeLie::new(vec![Generator::new("x", 1), Generator::new("y", 2)], 6).unwrap();
        let (x, y) = (l.gen(0), l.gen(1));
        let e = bracket(&y, &x).scale(&Q::new(-1, 2));
        assert_eq!(l.render(&e), "1/2 [x,y]");
        assert_eq!(l.render(&LieElement::zero(3)), "0");
    }

    #[test]
    fn derivation_rule_on_words() {
        // d on the CP^2 model: d x3 = [x1,x1]; d [x1,x3] = -[x1,[x1,x1]] = 0
        let l = FreeLie::new(
            vec![Generator::new("x1", 1), Generator::new("x3", 3)],
            8,
        )
        .unwrap();
        let x1 = l.gen(0);
        let dvals = vec![SparseVec::new(), bracket(&x1, &x1).terms().clone()];
        let e = bracket(&x1, &l.gen(1));
        let de = apply_derivation(e.terms(), l.letter_degrees(), -1, &dvals, None);
        assert!(de.is_zero());
    }

    #[test]
    fn hom_along_derivation_agrees_with_identity() {
        let l = FreeLie::new(vec![Generator::new("a", 1), Generator::new("b", 2)], 8).unwrap();
        let (a, b) = (l.gen(0), l.gen(1));
        let e = bracket(&bracket(&a, &b), &a);
        let vals = vec![b.terms().clone(), bracket(&a, &b).terms().clone()];
        let ids: Vec<TensorPoly> = (0..2).map(|i| l.gen(i).terms().clone()).collect();
        let lhs = apply_derivation(e.terms(), l.letter_degrees(), 1, &vals, None);
        let rhs = apply_derivation(e.terms(), l.letter_degrees(), 1, &vals, Some(&ids));
        assert_eq!(lhs, rhs);
        assert_eq!(apply_hom(e.terms(), &ids), *e.terms());
    }
}
