//! Lie algebras by structure constants, the Chevalley–Eilenberg differential on
//! invariant forms, Lie derivatives, and Levi-Civita connections of invariant
//! metrics.
//!
//! Sign convention: for an invariant one-form, `dw(X, Y) = -w([X, Y])`, so
//! `d w_k = -Σ_{i<j} c^k_ij w_i ^ w_j` where `[e_i, e_j] = Σ_k c^k_ij e_k`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{KForm, TangentVector};
use crate::linalg::{Endomorphism, Matrix};
use crate::scalar::{Coeff, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebraModel {
    name: Option<String>,
    dim: usize,
    /// `c^k_ij` at `(i * n + j) * n + k`; antisymmetric in `i, j`.
    constants: Vec<Scalar>,
    coframe_d: Vec<KForm>,
}

impl std::fmt::Debug for LieAlgebraModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieAlgebraModel")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("d", &self.coframe_d)
            .finish()
    }
}

/// Result of the Jacobi check, with the first failing basis triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub holds: bool,
    pub d_squared_vanishes: bool,
    /// 0-based `(i, j, k)` and the nonzero cyclic sum.
    pub violation: Option<(usize, usize, usize, TangentVector)>,
}

impl LieAlgebraModel {
    fn from_constants(dim: usize, constants: Vec<Scalar>) -> Self {
        let mut m = LieAlgebraModel {
            name: None,
            dim,
            constants,
            coframe_d: Vec::new(),
        };
        m.coframe_d = (0..dim).map(|k| m.compute_coframe_d(k)).collect();
        m
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraModel::from_constants(dim, vec![Scalar::zero(); dim * dim * dim])
    }

    /// Builds from bracket entries `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`
    /// (0-based). Entries with `i > j` are folded in with a sign flip.
    pub fn from_brackets(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        if dim > crate::exterior::MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut c = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                return Err(Error::InvalidModel(format!("bracket [e{0}, e{0}] must vanish", i + 1)));
            }
            c[(i * dim + j) * dim + k] += &v;
            c[(j * dim + i) * dim + k] -= &v;
        }
        Ok(LieAlgebraModel::from_constants(dim, c))
    }

    /// Builds from the differentials of the coframe: `d[k]` is `d w_k`.
    pub fn from_differentials(d: &[KForm]) -> Result<Self> {
        let dim = d.len();
        let mut entries = Vec::new();
        for (k, dk) in d.iter().enumerate() {
            if dk.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: dk.dim(),
                });
            }
            dk.expect_degree(2)?;
            for (t, coef) in dk.terms() {
                let idx = t.indices();
                entries.push((idx[0], idx[1], k, -coef.clone()));
            }
        }
        LieAlgebraModel::from_brackets(dim, entries)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, k, c^k_ij)` with `i < j`.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    fn check_vector(&self, x: &TangentVector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn check_form<C: Coeff>(&self, a: &KForm<C>) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(())
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> TangentVector {
        TangentVector::new((0..self.dim).map(|k| self.structure_constant(i, j, k).clone()).collect())
    }

    pub fn bracket(&self, x: &TangentVector, y: &TangentVector) -> Result<TangentVector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.components().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.components().iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let f = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        Ok(TangentVector::new(out))
    }

    /// Matrix of `ad_X = [X, ·]`.
    pub fn ad(&self, x: &TangentVector) -> Result<Endomorphism> {
        let images = (0..self.dim)
            .map(|j| self.bracket(x, &TangentVector::basis(self.dim, j)))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(&images)
    }

    fn compute_coframe_d(&self, k: usize) -> KForm {
        let n = self.dim;
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                let c = self.structure_constant(i, j, k);
                if !c.is_zero() {
                    f = &f + &KForm::monomial(n, &[i, j], -c.clone()).expect("indices in range");
                }
            }
        }
        f
    }

    /// `d w_k`.
    pub fn coframe_differential(&self, k: usize) -> &KForm {
        &self.coframe_d[k]
    }

    /// Chevalley–Eilenberg differential, extended from the coframe by the
    /// graded Leibniz rule.
    pub fn ce_differential<C: Coeff>(&self, a: &KForm<C>) -> Result<KForm<C>> {
        self.check_form(a)?;
        let n = self.dim;
        let d: Vec<KForm<C>> = self.coframe_d.iter().map(|f| f.map_coeffs(C::from_scalar)).collect();
        let mut out = KForm::zero(n, a.degree() + 1);
        for (t, c) in a.terms() {
            let idx = t.indices();
            for s in 0..idx.len() {
                if d[idx[s]].is_zero() {
                    continue;
                }
                let mut term = KForm::constant(n, if s % 2 == 0 { c.clone() } else { -c.clone() });
                for (u, &i) in idx.iter().enumerate() {
                    let factor = if u == s { d[i].clone() } else { KForm::basis(n, i) };
                    term = term.wedge(&factor)?;
                }
                out = out.checked_add(&term)?;
            }
        }
        Ok(out)
    }

    /// Jacobi identity on all basis triples, cross-checked against `d∘d = 0`
    /// on the coframe.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim;
        let mut violation = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a| TangentVector::basis(n, a);
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)]
                        .iter()
                        .map(|&(a, b, c)| {
                            let inner = self.bracket(&e(b), &e(c)).expect("dims match");
                            self.bracket(&e(a), &inner).expect("dims match")
                        })
                        .reduce(|acc, v| acc.checked_add(&v).expect("dims match"))
                        .expect("three terms");
                    if !cyc.is_zero() {
                        violation = Some((i, j, k, cyc));
                        break 'outer;
                    }
                }
            }
        }
        JacobiReport {
            holds: violation.is_none(),
            d_squared_vanishes: self.d_squared_vanishes(),
            violation,
        }
    }

    pub fn d_squared_vanishes(&self) -> bool {
        self.coframe_d.iter().all(|dk| {
            self.ce_differential(dk)
                .map(|dd| dd.is_zero())
                .unwrap_or(false)
        })
    }

    /// `L_X a = i_X da + d i_X a` (Cartan's formula) for an invariant field `X`.
    pub fn lie_derivative_form<C: Coeff>(&self, x: &TangentVector, a: &KForm<C>) -> Result<KForm<C>> {
        self.check_vector(x)?;
        let da = self.ce_differential(a)?;
        let first = if da.degree() == 0 {
            KForm::zero(self.dim, 0)
        } else {
            da.interior(x)?
        };
        if a.degree() == 0 {
            return Ok(first);
        }
        let second = self.ce_differential(&a.interior(x)?)?;
        first.checked_add(&second)
    }

    /// `(L_X J)(Y) = [X, JY] - J[X, Y]`, i.e. the commutator `[ad_X, J]`.
    pub fn lie_derivative_endo(&self, x: &TangentVector, j: &Endomorphism) -> Result<Endomorphism> {
        self.ad(x)?.commutator(j)
    }

    /// `(L_X g)(Y, Z) = -g([X, Y], Z) - g(Y, [X, Z])`.
    pub fn lie_derivative_metric(&self, x: &TangentVector, g: &MetricData) -> Result<Matrix> {
        let ad = self.ad(x)?;
        let a = ad.matrix();
        let gm = g.matrix();
        let left = a.transpose().mul(gm)?;
        let right = gm.mul(a)?;
        Ok(left.add(&right)?.neg())
    }

    /// Whether `d` is a derivation: `d[X, Y] = [dX, Y] + [X, dY]` on basis pairs.
    pub fn is_derivation(&self, d: &Endomorphism) -> Result<bool> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let (ei, ej) = (TangentVector::basis(n, i), TangentVector::basis(n, j));
                let lhs = d.apply(&self.bracket(&ei, &ej)?)?;
                let rhs = self
                    .bracket(&d.apply(&ei)?, &ej)?
                    .checked_add(&self.bracket(&ei, &d.apply(&ej)?)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Levi-Civita connection of an invariant metric by the Koszul formula
    /// `2g(∇_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
    pub fn levi_civita(&self, g: &MetricData) -> Result<ConnectionData> {
        let n = self.dim;
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        let ginv = g.inverse();
        let half = Scalar::new(1.into(), 2.into());
        let mut gamma = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (TangentVector::basis(n, i), TangentVector::basis(n, j));
                let kos: Vec<Scalar> = (0..n)
                    .map(|l| {
                        let el = TangentVector::basis(n, l);
                        let a = g.inner(&self.bracket(&ei, &ej)?, &el)?;
                        let b = g.inner(&self.bracket(&ej, &el)?, &ei)?;
                        let c = g.inner(&self.bracket(&el, &ei)?, &ej)?;
                        Ok((a - b + c) * &half)
                    })
                    .collect::<Result<_>>()?;
                let v = ginv.mul_vec(&kos)?;
                for (k, vk) in v.into_iter().enumerate() {
                    gamma[(i * n + j) * n + k] = vk;
                }
            }
        }
        Ok(ConnectionData { dim: n, gamma })
    }

    /// The same Lie algebra in the basis `e'_j = Σ_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebraModel> {
        let n = self.dim;
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::InvalidModel("change of basis is singular".into()))?;
        let new_e: Vec<TangentVector> = (0..n).map(|j| TangentVector::new(p.column(j))).collect();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&new_e[a], &new_e[b])?;
                let coords = pinv.mul_vec(br.components())?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let mut out = LieAlgebraModel::from_brackets(n, entries)?;
        out.name = self.name.clone();
        Ok(out)
    }
}

/// Symmetric positive definite matrix `g_ij = g(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MetricData(Matrix);

impl MetricData {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        m.check_positive_definite()?;
        Ok(MetricData(m))
    }

    pub fn identity(n: usize) -> Self {
        MetricData(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn scaled(&self, s: &Scalar) -> Result<MetricData> {
        MetricData::new(self.0.scale(s))
    }

    pub fn inverse(&self) -> Matrix {
        self.0.inverse().expect("positive definite metrics are invertible")
    }

    pub fn inner(&self, x: &TangentVector, y: &TangentVector) -> Result<Scalar> {
        let gy = self.0.mul_vec(y.components())?;
        Ok(x.components().iter().zip(&gy).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    /// The one-form `g(X, ·)`.
    pub fn lower(&self, x: &TangentVector) -> Result<KForm> {
        Ok(KForm::from_covector(&self.0.mul_vec(x.components())?))
    }

    /// The vector `g`-dual to a one-form.
    pub fn raise(&self, theta: &KForm) -> Result<TangentVector> {
        Ok(TangentVector::new(self.inverse().mul_vec(&theta.covector()?)?))
    }

    /// `|theta|^2` in the dual metric.
    pub fn norm_sq(&self, theta: &KForm) -> Result<Scalar> {
        let v = self.raise(theta)?;
        Ok(theta.covector()?.iter().zip(v.components()).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    /// `g(JX, JY) = g(X, Y)`, i.e. `J^T g J = g`.
    pub fn is_invariant_under(&self, j: &Endomorphism) -> Result<bool> {
        let m = j.matrix();
        Ok(m.transpose().mul(&self.0)?.mul(m)? == self.0)
    }
}

/// Connection coefficients `∇_{e_i} e_j = Σ_k Γ^k_ij e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    dim: usize,
    gamma: Vec<Scalar>,
}

impl ConnectionData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// `∇_{e_i} e_j`.
    pub fn nabla_basis(&self, i: usize, j: usize) -> TangentVector {
        TangentVector::new((0..self.dim).map(|k| self.christoffel(i, j, k).clone()).collect())
    }

    /// `∇_X Y` for invariant fields.
    pub fn nabla(&self, x: &TangentVector, y: &TangentVector) -> Result<TangentVector> {
        let n = self.dim;
        let mut out = TangentVector::zero(n);
        for (i, xi) in x.components().iter().enumerate() {
            for (j, yj) in y.components().iter().enumerate() {
                if xi.is_zero() || yj.is_zero() {
                    continue;
                }
                out = out.checked_add(&self.nabla_basis(i, j).scale(&(xi * yj)))?;
            }
        }
        Ok(out)
    }

    /// `Γ^k_ij - Γ^k_ji = c^k_ij` for all basis triples.
    pub fn is_torsion_free(&self, model: &LieAlgebraModel) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    self.christoffel(i, j, k) - self.christoffel(j, i, k) == *model.structure_constant(i, j, k)
                })
            })
        })
    }

    /// `g(∇_X Y, Z) + g(Y, ∇_X Z) = 0` for all basis triples (invariant metric).
    pub fn is_metric_compatible(&self, g: &MetricData) -> Result<bool> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ej, ek) = (TangentVector::basis(n, j), TangentVector::basis(n, k));
                    let s = g.inner(&self.nabla_basis(i, j), &ek)? + g.inner(&ej, &self.nabla_basis(i, k))?;
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Matrix `((∇_{e_i} θ)(e_j)) = (-θ(∇_{e_i} e_j))` of an invariant one-form.
    pub fn covariant_derivative_oneform(&self, theta: &KForm) -> Result<Matrix> {
        theta.expect_degree(1)?;
        let n = self.dim;
        let cov = theta.covector()?;
        Ok(Matrix::from_fn(n, n, |i, j| {
            -(0..n).fold(Scalar::zero(), |acc, k| acc + &cov[k] * self.christoffel(i, j, k))
        }))
    }

    /// `∇_{e_i} J` for each `i`, as endomorphisms `Y ↦ ∇_{e_i}(JY) - J ∇_{e_i} Y`.
    pub fn covariant_derivative_endo(&self, j: &Endomorphism) -> Result<Vec<Endomorphism>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let ei = TangentVector::basis(n, i);
                let images = (0..n)
                    .map(|c| {
                        let ec = TangentVector::basis(n, c);
                        self.nabla(&ei, &j.apply(&ec)?)?
                            .checked_sub(&j.apply(&self.nabla_basis(i, c))?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Endomorphism::from_images(&images)
            })
            .collect()
    }
}
