//! Graded exterior algebra over an `n`-dimensional space with a fixed basis.
//!
//! Indices are 0-based internally (`e_0 .. e_{n-1}`, coframe `w_0 .. w_{n-1}`);
//! documents and reports shift them to 1-based.
//!
//! Evaluation follows the determinant convention
//! `(w_{i1} ^ .. ^ w_{ik})(X_1, .., X_k) = det[w_{is}(X_t)]`, with no `1/k!`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Endomorphism, Matrix};
use crate::scalar::{format_scalar, parse_scalar, sign, Coeff, Scalar};

pub const MAX_DIM: usize = 32;

/// Strictly increasing tuple of basis indices, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexTuple(u32);

impl IndexTuple {
    pub const EMPTY: IndexTuple = IndexTuple(0);

    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: MAX_DIM,
                });
            }
            if last.is_some_and(|l| l >= i) {
                return Err(Error::UnorderedIndices(indices.to_vec()));
            }
            last = Some(i);
            mask |= 1 << i;
        }
        Ok(IndexTuple(mask))
    }

    pub fn single(i: usize) -> Self {
        IndexTuple(1 << i)
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            IndexTuple(u32::MAX)
        } else {
            IndexTuple((1u32 << n) - 1)
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn without(self, i: usize) -> Self {
        IndexTuple(self.0 & !(1 << i))
    }

    /// Concatenation sign: `w_self ^ w_other = sign * w_(self ∪ other)`, or
    /// `None` when the tuples share an index.
    pub fn wedge(self, other: IndexTuple) -> Option<(IndexTuple, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other
            .iter()
            .map(|j| if j >= 31 { 0 } else { (self.0 >> (j + 1)).count_ones() })
            .sum();
        Some((IndexTuple(self.0 | other.0), if inversions.is_multiple_of(2) { 1 } else { -1 }))
    }
}

impl Ord for IndexTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// Constant-coefficient tangent vector `Σ x_i e_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangentVector(Vec<Scalar>);

impl TangentVector {
    pub fn new(components: Vec<Scalar>) -> Self {
        TangentVector(components)
    }

    pub fn zero(n: usize) -> Self {
        TangentVector(vec![Scalar::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = TangentVector::zero(n);
        v.0[i] = Scalar::one();
        v
    }

    /// Parses a comma-separated list of rationals such as `0,0,1/2,0`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .enumerate()
            .map(|(i, part)| {
                parse_scalar(part.trim()).map_err(|e| Error::Document {
                    path: format!("vector[{i}]"),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(TangentVector)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> TangentVector {
        TangentVector(self.0.iter().map(|x| x * s).collect())
    }

    fn check_dim(&self, other: &TangentVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TangentVector) -> Result<TangentVector> {
        self.check_dim(other)?;
        Ok(TangentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &TangentVector) -> Result<TangentVector> {
        self.check_dim(other)?;
        Ok(TangentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Neg for &TangentVector {
    type Output = TangentVector;
    fn neg(self) -> TangentVector {
        TangentVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for TangentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_scalar).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for TangentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for TangentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_scalar).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TangentVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(d)?;
        parts
            .iter()
            .map(|p| parse_scalar(p))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(TangentVector)
            .map_err(serde::de::Error::custom)
    }
}

/// Orientation data of a top-degree form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeCheck {
    pub is_volume: bool,
    /// Sign of the coefficient on `w_1 ^ .. ^ w_n`; `None` when zero.
    pub sign: Option<i8>,
}

/// Homogeneous form of degree `k` on an `n`-dimensional space.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm<C = Scalar> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<IndexTuple, C>,
}

impl<C: Coeff> KForm<C> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        let mut f = KForm::zero(dim, 0);
        f.add_term(IndexTuple::EMPTY, c);
        f
    }

    /// The coframe one-form `w_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut f = KForm::zero(dim, 1);
        f.add_term(IndexTuple::single(i), C::one());
        f
    }

    /// `coeff * w_{i1} ^ .. ^ w_{ik}` for indices in any order; repeated
    /// indices give zero.
    pub fn monomial(dim: usize, indices: &[usize], coeff: C) -> Result<Self> {
        let mut acc = KForm::constant(dim, coeff);
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            acc = acc.wedge(&KForm::basis(dim, i))?;
        }
        Ok(acc)
    }

    /// Builds a form from `(strictly increasing indices, coefficient)` pairs.
    /// Repeated tuples are summed.
    pub fn from_terms<'a>(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (&'a [usize], C)>,
    ) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut f = KForm::zero(dim, degree);
        for (indices, c) in terms {
            let t = IndexTuple::new(indices)?;
            if t.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: t.degree(),
                });
            }
            if let Some(m) = t.max_index().filter(|&m| m >= dim) {
                return Err(Error::IndexOutOfRange { index: m, dim });
            }
            f.add_term(t, c);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, t: IndexTuple, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&t) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(t, sum);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (IndexTuple, &C)> {
        self.terms.iter().map(|(t, c)| (*t, c))
    }

    pub fn coefficient(&self, indices: &[usize]) -> C {
        IndexTuple::new(indices)
            .ok()
            .and_then(|t| self.terms.get(&t).cloned())
            .unwrap_or_else(C::zero)
    }

    /// Coefficient on `w_1 ^ .. ^ w_n` (zero unless the form has top degree).
    pub fn top_coefficient(&self) -> C {
        if self.degree != self.dim {
            return C::zero();
        }
        self.terms
            .get(&IndexTuple::full(self.dim))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    fn check_dim(&self, other_dim: usize) -> Result<()> {
        if self.dim != other_dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other_dim,
            });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &KForm<C>) -> Result<()> {
        self.check_dim(other.dim)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &KForm<C>) -> Result<KForm<C>> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &KForm<C>) -> Result<KForm<C>> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, s: &C) -> KForm<C> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            out.add_term(*t, c.clone() * s.clone());
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> KForm<C> {
        self.scale(&C::from_scalar(s))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> KForm<D> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            out.add_term(*t, f(c));
        }
        out
    }

    /// Exterior product. Degrees above the dimension yield the zero form.
    pub fn wedge(&self, other: &KForm<C>) -> Result<KForm<C>> {
        self.check_dim(other.dim)?;
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                if let Some((t, s)) = ta.wedge(*tb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(t, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `m`-fold wedge power; the 0-th power is the constant 1.
    pub fn power(&self, m: usize) -> KForm<C> {
        let mut acc = KForm::constant(self.dim, C::one());
        for _ in 0..m {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Interior product `i_X a`.
    pub fn interior(&self, x: &TangentVector) -> Result<KForm<C>> {
        self.check_dim(x.dim())?;
        if self.degree == 0 {
            return Err(Error::InteriorOfScalar);
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (t, c) in &self.terms {
            for (s, i) in t.iter().enumerate() {
                let xi = &x.components()[i];
                if xi.is_zero() {
                    continue;
                }
                let v = c.clone() * C::from_scalar(xi);
                out.add_term(t.without(i), if s % 2 == 0 { v } else { -v });
            }
        }
        Ok(out)
    }

    /// `a(X_1, .., X_k)` under the determinant convention.
    pub fn evaluate(&self, vectors: &[TangentVector]) -> Result<C> {
        if vectors.len() != self.degree {
            return Err(Error::Arity {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        for v in vectors {
            self.check_dim(v.dim())?;
        }
        let mut acc = C::zero();
        for (t, c) in &self.terms {
            let idx = t.indices();
            let minor = Matrix::from_fn(idx.len(), idx.len(), |s, u| {
                vectors[u].components()[idx[s]].clone()
            });
            let det = minor.determinant()?;
            if !det.is_zero() {
                acc = acc + c.clone() * C::from_scalar(&det);
            }
        }
        Ok(acc)
    }

    /// Product of `images[i]` over the indices of a monomial, in order.
    fn substitute(&self, t: IndexTuple, images: &[KForm<C>]) -> KForm<C> {
        t.iter().fold(KForm::constant(self.dim, C::one()), |acc, i| {
            acc.wedge(&images[i]).expect("same dimension")
        })
    }

    /// Pullback along the linear map with matrix `p`: `w_i ↦ Σ_j p[i][j] w_j`.
    /// With `p` the change-of-basis matrix (new `e'_j = Σ_i p[i][j] e_i`), this
    /// expresses the form in the new coframe.
    pub fn pullback(&self, p: &Matrix) -> Result<KForm<C>> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            });
        }
        let images: Vec<KForm<C>> = (0..self.dim)
            .map(|i| {
                let mut f = KForm::zero(self.dim, 1);
                for j in 0..self.dim {
                    f.add_term(IndexTuple::single(j), C::from_scalar(&p[(i, j)]));
                }
                f
            })
            .collect();
        let mut out = KForm::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            let img = self.substitute(*t, &images).scale(c);
            out = out.checked_add(&img)?;
        }
        Ok(out)
    }

    /// Action of an endomorphism `D` as a derivation of degree zero:
    /// `(D·a)(Y_1, .., Y_k) = -Σ_s a(Y_1, .., D Y_s, .., Y_k)`.
    ///
    /// For `D = ad_X` this is the Lie derivative of an invariant form.
    pub fn derivation_action(&self, d: &Endomorphism) -> Result<KForm<C>> {
        self.check_dim(d.dim())?;
        let m = d.matrix();
        let images: Vec<KForm<C>> = (0..self.dim)
            .map(|i| {
                let mut f = KForm::zero(self.dim, 1);
                for j in 0..self.dim {
                    f.add_term(IndexTuple::single(j), -C::from_scalar(&m[(i, j)]));
                }
                f
            })
            .collect();
        let mut out = KForm::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            let idx = t.indices();
            for s in 0..idx.len() {
                let mut term = KForm::constant(self.dim, c.clone());
                for (u, &i) in idx.iter().enumerate() {
                    let factor = if u == s {
                        images[i].clone()
                    } else {
                        KForm::basis(self.dim, i)
                    };
                    term = term.wedge(&factor)?;
                }
                out = out.checked_add(&term)?;
            }
        }
        Ok(out)
    }
}

impl KForm<Scalar> {
    /// One-form `Σ a_i w_i`.
    pub fn from_covector(a: &[Scalar]) -> Self {
        let mut f = KForm::zero(a.len(), 1);
        for (i, c) in a.iter().enumerate() {
            f.add_term(IndexTuple::single(i), c.clone());
        }
        f
    }

    /// Coefficient vector of a one-form.
    pub fn covector(&self) -> Result<Vec<Scalar>> {
        self.expect_degree(1)?;
        Ok((0..self.dim).map(|i| self.coefficient(&[i])).collect())
    }

    /// `a(X)` for a one-form.
    pub fn pair_with(&self, x: &TangentVector) -> Result<Scalar> {
        self.expect_degree(1)?;
        self.evaluate(std::slice::from_ref(x))
    }

    pub fn expect_degree(&self, k: usize) -> Result<()> {
        if self.degree != k {
            return Err(Error::DegreeMismatch {
                expected: k,
                found: self.degree,
            });
        }
        Ok(())
    }

    /// Alternating matrix `M_ij = a(e_i, e_j)` of a two-form.
    pub fn two_form_matrix(&self) -> Result<Matrix> {
        self.expect_degree(2)?;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (t, c) in &self.terms {
            let idx = t.indices();
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        Ok(m)
    }

    /// Two-form with `a(e_i, e_j) = m[i][j]`; `m` must be alternating.
    pub fn from_two_form_matrix(m: &Matrix) -> Result<Self> {
        let n = m.rows();
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.cols(),
            });
        }
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return Err(Error::Incompatible(format!("diagonal entry ({i}, {i}) of an alternating matrix is nonzero")));
            }
            for j in i + 1..n {
                if m[(j, i)] != -m[(i, j)].clone() {
                    return Err(Error::Incompatible(format!("matrix is not alternating at ({i}, {j})")));
                }
                f.add_term(IndexTuple(1 << i | 1 << j), m[(i, j)].clone());
            }
        }
        Ok(f)
    }

    /// Rank of a two-form; always even.
    pub fn two_form_rank(&self) -> Result<usize> {
        Ok(self.two_form_matrix()?.rank())
    }

    /// Whether a top-degree form is a volume form, with its orientation sign
    /// relative to `w_1 ^ .. ^ w_n`.
    pub fn is_volume(&self) -> Result<VolumeCheck> {
        self.expect_degree(self.dim)?;
        let top = self.top_coefficient();
        Ok(VolumeCheck {
            is_volume: !top.is_zero(),
            sign: (!top.is_zero()).then(|| sign(&top)),
        })
    }
}

impl<C: Coeff> Neg for &KForm<C> {
    type Output = KForm<C>;
    fn neg(self) -> KForm<C> {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(t, c)| (*t, -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Neg for KForm<C> {
    type Output = KForm<C>;
    fn neg(self) -> KForm<C> {
        -&self
    }
}

/// Panics on mismatched dimension or degree; use [`KForm::checked_add`] for
/// untrusted input.
impl<C: Coeff> Add for &KForm<C> {
    type Output = KForm<C>;
    fn add(self, rhs: &KForm<C>) -> KForm<C> {
        self.checked_add(rhs).expect("forms of equal shape")
    }
}

impl<C: Coeff> Sub for &KForm<C> {
    type Output = KForm<C>;
    fn sub(self, rhs: &KForm<C>) -> KForm<C> {
        self.checked_sub(rhs).expect("forms of equal shape")
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ if text.contains(' ') => (false, format!("({text})")),
                _ => (false, text.clone()),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let names: Vec<String> = t.iter().map(|i| format!("w{}", i + 1)).collect();
            match (names.is_empty(), mag.as_str()) {
                (true, _) => write!(f, "{mag}")?,
                (false, "1") => write!(f, "{}", names.join("^"))?,
                (false, _) => write!(f, "{mag} {}", names.join("^"))?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm[n={}, k={}]", self.dim, self.degree)?;
        f.debug_map()
            .entries(self.terms.iter().map(|(t, c)| {
                (t.iter().map(|i| i + 1).collect::<Vec<_>>(), c)
            }))
            .finish()
    }
}

/// One term of a serialized form: 1-based indices and a `"p/q"` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub indices: Vec<usize>,
    pub coeff: String,
}

/// Serialized form as used by model documents and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub degree: usize,
    pub terms: Vec<TermDoc>,
}

impl From<&KForm<Scalar>> for FormDoc {
    fn from(f: &KForm<Scalar>) -> Self {
        FormDoc {
            degree: f.degree,
            terms: f
                .terms
                .iter()
                .map(|(t, c)| TermDoc {
                    indices: t.iter().map(|i| i + 1).collect(),
                    coeff: format_scalar(c),
                })
                .collect(),
        }
    }
}

impl FormDoc {
    /// Converts to a form on an `dim`-dimensional space; `path` prefixes
    /// error positions.
    pub fn to_form(&self, dim: usize, path: &str) -> Result<KForm<Scalar>> {
        if self.degree > dim {
            return Err(Error::Document {
                path: format!("{path}.degree"),
                message: format!("degree {} exceeds dimension {dim}", self.degree),
            });
        }
        let mut f = KForm::zero(dim, self.degree);
        for (n, term) in self.terms.iter().enumerate() {
            let at = |field: &str| format!("{path}.terms[{n}].{field}");
            let c = parse_scalar(&term.coeff).map_err(|e| Error::Document {
                path: at("coeff"),
                message: e.to_string(),
            })?;
            if term.indices.len() != self.degree {
                return Err(Error::Document {
                    path: at("indices"),
                    message: format!("expected {} indices, found {}", self.degree, term.indices.len()),
                });
            }
            if let Some(&bad) = term.indices.iter().find(|&&i| i == 0 || i > dim) {
                return Err(Error::Document {
                    path: at("indices"),
                    message: format!("index {bad} outside 1..={dim}"),
                });
            }
            let zero_based: Vec<usize> = term.indices.iter().map(|i| i - 1).collect();
            let t = IndexTuple::new(&zero_based).map_err(|_| Error::Document {
                path: at("indices"),
                message: "indices must be strictly increasing".into(),
            })?;
            f.add_term(t, c);
        }
        Ok(f)
    }
}

impl Serialize for KForm<Scalar> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormDoc::from(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w(n: usize, i: usize) -> KForm {
        KForm::basis(n, i - 1)
    }

    fn e(n: usize, i: usize) -> TangentVector {
        TangentVector::basis(n, i - 1)
    }

    fn nil_lcs() -> KForm {
        let a = w(4, 1).wedge(&w(4, 2)).unwrap();
        let b = w(4, 3).wedge(&w(4, 4)).unwrap();
        &b - &a
    }

    #[test]
    fn wedge_basis_and_alternation() {
        let f = w(4, 1).wedge(&w(4, 2)).unwrap();
        assert_eq!(f.coefficient(&[0, 1]), int(1));
        assert_eq!(f.num_terms(), 1);
        assert!(w(4, 1).wedge(&w(4, 1)).unwrap().is_zero());
        assert_eq!(w(4, 2).wedge(&w(4, 1)).unwrap(), -f);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(w(4, 1).wedge(&w(3, 1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn lcs_form_squared() {
        let sq = nil_lcs().wedge(&nil_lcs()).unwrap();
        assert_eq!(sq.top_coefficient(), int(-2));
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(nil_lcs().power(2), sq);
    }

    #[test]
    fn interior_examples() {
        let w34 = w(4, 3).wedge(&w(4, 4)).unwrap();
        assert_eq!(w34.interior(&e(4, 4)).unwrap(), -w(4, 3));
        assert_eq!(nil_lcs().interior(&e(4, 4)).unwrap(), -w(4, 3));
        assert!(nil_lcs().interior(&TangentVector::zero(4)).unwrap().is_zero());
        assert_eq!(KForm::constant(4, int(1)).interior(&e(4, 1)), Err(Error::InteriorOfScalar));
    }

    #[test]
    fn evaluate_examples() {
        let w12 = w(4, 1).wedge(&w(4, 2)).unwrap();
        assert_eq!(w12.evaluate(&[e(4, 1), e(4, 2)]).unwrap(), int(1));
        assert_eq!(w12.evaluate(&[e(4, 2), e(4, 1)]).unwrap(), int(-1));
        let w34 = w(4, 3).wedge(&w(4, 4)).unwrap();
        let f = &(-&w12) - &w34;
        assert_eq!(f.evaluate(&[e(4, 3), e(4, 4)]).unwrap(), int(-1));
        let x = TangentVector::new(vec![int(1), int(2), int(3), int(4)]);
        assert_eq!(nil_lcs().evaluate(&[x.clone(), x]).unwrap(), int(0));
        assert!(matches!(w12.evaluate(&[e(4, 1)]), Err(Error::Arity { expected: 2, found: 1 })));
    }

    #[test]
    fn power_examples() {
        let dw3 = -w(4, 1).wedge(&w(4, 2)).unwrap();
        assert!(dw3.power(2).is_zero());
        assert_eq!(dw3.power(1), dw3);
        assert_eq!(dw3.power(0), KForm::constant(4, int(1)));
    }

    #[test]
    fn rank_examples() {
        let dw3 = -w(4, 1).wedge(&w(4, 2)).unwrap();
        assert_eq!(dw3.two_form_rank().unwrap(), 2);
        assert_eq!(KForm::<Scalar>::zero(4, 2).two_form_rank().unwrap(), 0);
        assert_eq!(nil_lcs().two_form_rank().unwrap(), 4);
        assert!(matches!(w(4, 1).two_form_rank(), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn volume_examples() {
        let vol = KForm::monomial(4, &[0, 1, 2, 3], int(1)).unwrap();
        assert_eq!(vol.is_volume().unwrap(), VolumeCheck { is_volume: true, sign: Some(1) });
        assert_eq!(
            KForm::<Scalar>::zero(4, 4).is_volume().unwrap(),
            VolumeCheck { is_volume: false, sign: None }
        );
        // ω3 ^ (-ω1^ω2) ^ ω4
        let dw3 = -w(4, 1).wedge(&w(4, 2)).unwrap();
        let f = w(4, 3).wedge(&dw3).unwrap().wedge(&w(4, 4)).unwrap();
        assert_eq!(f.is_volume().unwrap().sign, Some(-1));
        assert!(nil_lcs().is_volume().is_err());
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let f = KForm::monomial(4, &[2, 0], int(3)).unwrap();
        assert_eq!(f.coefficient(&[0, 2]), int(-3));
        assert!(KForm::monomial(4, &[1, 1], int(3)).unwrap().is_zero());
    }

    #[test]
    fn from_terms_validates() {
        let bad: &[usize] = &[2, 1];
        assert!(KForm::from_terms(4, 2, [(bad, int(1))]).is_err());
        let out: &[usize] = &[1, 4];
        assert!(KForm::from_terms(4, 2, [(out, int(1))]).is_err());
    }

    #[test]
    fn two_form_matrix_round_trip() {
        let m = nil_lcs().two_form_matrix().unwrap();
        assert_eq!(KForm::from_two_form_matrix(&m).unwrap(), nil_lcs());
    }

    #[test]
    fn form_doc_positions() {
        let doc = FormDoc {
            degree: 1,
            terms: vec![TermDoc { indices: vec![1], coeff: "1.5".into() }],
        };
        let err = doc.to_form(4, "forms.alpha").unwrap_err();
        assert!(err.to_string().starts_with("forms.alpha.terms[0].coeff"));
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let a = IndexTuple::new(&[0, 3]).unwrap();
        let b = IndexTuple::new(&[1, 2]).unwrap();
        assert!(a < b);
    }
}
