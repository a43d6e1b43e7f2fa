//! Almost complex structures on invariant models: Nijenhuis integrability,
//! metrics associated to contact pairs, the conjugate structure `T`,
//! normality, Vaisman structures and Kähler pairs.
//!
//! The fundamental form of a Hermitian pair `(J, g)` is `ω(X, Y) = g(X, JY)`,
//! so its matrix is `g J`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{KForm, TangentVector};
use crate::lie::{LieAlgebraModel, MetricData};
use crate::linalg::{Endomorphism, Matrix};
use crate::pairs::{self, ReebFields, SymplecticPairReport};
use crate::scalar::{int, Scalar};

fn require_almost_complex(j: &Endomorphism, n: usize) -> Result<()> {
    if j.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.dim(),
        });
    }
    if !j.is_almost_complex() {
        return Err(Error::NotAlmostComplex);
    }
    Ok(())
}

/// `N_J(X, Y) = 2([JX, JY] - [X, Y] - J[JX, Y] - J[X, JY])`.
pub fn nijenhuis(model: &LieAlgebraModel, j: &Endomorphism, x: &TangentVector, y: &TangentVector) -> Result<TangentVector> {
    require_almost_complex(j, model.dim())?;
    let (jx, jy) = (j.apply(x)?, j.apply(y)?);
    let sum = model
        .bracket(&jx, &jy)?
        .checked_sub(&model.bracket(x, y)?)?
        .checked_sub(&j.apply(&model.bracket(&jx, y)?)?)?
        .checked_sub(&j.apply(&model.bracket(x, &jy)?)?)?;
    Ok(sum.scale(&int(2)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NijenhuisWitness {
    /// 1-based basis indices.
    pub i: usize,
    pub j: usize,
    pub value: TangentVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Integrability {
    pub integrable: bool,
    /// First basis pair `i < j` with `N_J(e_i, e_j) ≠ 0`.
    pub witness: Option<NijenhuisWitness>,
}

pub fn integrability(model: &LieAlgebraModel, j: &Endomorphism) -> Result<Integrability> {
    require_almost_complex(j, model.dim())?;
    let n = model.dim();
    for a in 0..n {
        for b in a + 1..n {
            let value = nijenhuis(model, j, &TangentVector::basis(n, a), &TangentVector::basis(n, b))?;
            if !value.is_zero() {
                return Ok(Integrability {
                    integrable: false,
                    witness: Some(NijenhuisWitness { i: a + 1, j: b + 1, value }),
                });
            }
        }
    }
    Ok(Integrability {
        integrable: true,
        witness: None,
    })
}

pub fn is_integrable(model: &LieAlgebraModel, j: &Endomorphism) -> Result<bool> {
    Ok(integrability(model, j)?.integrable)
}

/// `ω(X, Y) = g(X, JY)`.
pub fn fundamental_form(g: &MetricData, j: &Endomorphism) -> Result<KForm> {
    let m = g.matrix().mul(j.matrix())?;
    KForm::from_two_form_matrix(&m).map_err(|_| Error::Incompatible("g(X, JY) is not alternating; J is not g-orthogonal".into()))
}

/// The one-form `θ ∘ J`.
pub fn compose_with(theta: &KForm, j: &Endomorphism) -> Result<KForm> {
    Ok(KForm::from_covector(&j.matrix().transpose().mul_vec(&theta.covector()?)?))
}

/// `dα - α ∧ β`, the form `g(X, JY)` of an associated metric.
fn minus_form(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<KForm> {
    Ok(&model.ce_differential(alpha)? - &alpha.wedge(beta)?)
}

/// `dα + α ∧ β`, the form `g(X, TY)` of the conjugate structure.
fn plus_form(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<KForm> {
    Ok(&model.ce_differential(alpha)? + &alpha.wedge(beta)?)
}

fn require_pair(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<usize> {
    let (h, k) = pairs::infer_type(model, beta)?;
    if k != 0 {
        return Err(Error::NotContactPair(format!("dβ ≠ 0 (type ({h}, {k}))")));
    }
    let report = pairs::verify_contact_pair(model, alpha, beta, h, 0)?;
    if !report.is_pair {
        return Err(Error::NotContactPair(report.failure().unwrap_or_default()));
    }
    Ok(h)
}

fn require_ja_is_b(j: &Endomorphism, reeb: &ReebFields) -> Result<()> {
    let ja = j.apply(&reeb.a)?;
    if ja != reeb.b {
        return Err(Error::Incompatible(format!("JA = {ja} but B = {}", reeb.b)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociatedMetric {
    pub metric: MetricData,
    pub reeb: ReebFields,
    /// `g(JX, JY) = g(X, Y)`.
    pub j_orthogonal: bool,
    /// `g(A, ·) = α` and `g(B, ·) = β`.
    pub reeb_dual: bool,
}

/// Solves `g(e_i, J e_j) = (dα - α ∧ β)(e_i, e_j)` for `g`.
pub fn associated_metric(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm, j: &Endomorphism) -> Result<AssociatedMetric> {
    require_pair(model, alpha, beta)?;
    require_almost_complex(j, model.dim())?;
    let reeb = pairs::reeb_fields(model, alpha, beta)?;
    require_ja_is_b(j, &reeb)?;
    // g J = Φ and J^{-1} = -J.
    let phi = minus_form(model, alpha, beta)?.two_form_matrix()?;
    let g = phi.mul(j.matrix())?.neg();
    if let Some((row, col)) = g.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let metric = MetricData::new(g)?;
    Ok(AssociatedMetric {
        j_orthogonal: metric.is_invariant_under(j)?,
        reeb_dual: metric.lower(&reeb.a)? == *alpha && metric.lower(&reeb.b)? == *beta,
        metric,
        reeb,
    })
}

/// A contact pair of type `(h, 0)` with `J` and an associated metric `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricContactPair {
    alpha: KForm,
    beta: KForm,
    h: usize,
    j: Endomorphism,
    g: MetricData,
    reeb: ReebFields,
}

impl MetricContactPair {
    pub fn new(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm, j: &Endomorphism, g: &MetricData) -> Result<Self> {
        let h = require_pair(model, alpha, beta)?;
        require_almost_complex(j, model.dim())?;
        if g.dim() != model.dim() {
            return Err(Error::DimensionMismatch {
                expected: model.dim(),
                found: g.dim(),
            });
        }
        let reeb = pairs::reeb_fields(model, alpha, beta)?;
        require_ja_is_b(j, &reeb)?;
        let phi = minus_form(model, alpha, beta)?.two_form_matrix()?;
        let gj = g.matrix().mul(j.matrix())?;
        if let Some((r, c, _)) = gj.sub(&phi)?.first_nonzero() {
            return Err(Error::Incompatible(format!(
                "g(e{}, J e{}) ≠ (dα - α ∧ β)(e{}, e{})",
                r + 1,
                c + 1,
                r + 1,
                c + 1
            )));
        }
        Ok(MetricContactPair {
            alpha: alpha.clone(),
            beta: beta.clone(),
            h,
            j: j.clone(),
            g: g.clone(),
            reeb,
        })
    }

    pub fn alpha(&self) -> &KForm {
        &self.alpha
    }

    pub fn beta(&self) -> &KForm {
        &self.beta
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn j(&self) -> &Endomorphism {
        &self.j
    }

    pub fn metric(&self) -> &MetricData {
        &self.g
    }

    pub fn reeb(&self) -> &ReebFields {
        &self.reeb
    }
}

/// `T = J` on `ker α ∩ ker β` and `T = -J` on `span(A, B)`.
pub fn conjugate_endomorphism(
    j: &Endomorphism,
    a: &TangentVector,
    b: &TangentVector,
    alpha: &KForm,
    beta: &KForm,
) -> Result<Endomorphism> {
    let n = j.dim();
    if j.apply(a)? != *b {
        return Err(Error::SplittingNotPreserved("JA ≠ B".into()));
    }
    let dual = Matrix::from_rows(vec![alpha.covector()?, beta.covector()?])?;
    for z in dual.nullspace() {
        let jz = j.apply(&TangentVector::new(z.clone()))?;
        if !dual.mul_vec(jz.components())?.iter().all(Zero::is_zero) {
            return Err(Error::SplittingNotPreserved(format!(
                "J maps {} out of ker α ∩ ker β",
                TangentVector::new(z)
            )));
        }
    }
    // J restricted to span(A, B) is α ⊗ B - β ⊗ A, so T = J - 2(α ⊗ B - β ⊗ A).
    let (av, bv) = (alpha.covector()?, beta.covector()?);
    let correction = Matrix::from_fn(n, n, |r, c| {
        (&b.components()[r] * &av[c] - &a.components()[r] * &bv[c]) * int(2)
    });
    Endomorphism::new(j.matrix().sub(&correction)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateReport {
    pub t: Endomorphism,
    pub t_squared_minus_identity: bool,
    /// `g(X, TY) = (dα + α ∧ β)(X, Y)`.
    pub fundamental_identity: bool,
    /// Sign of `(dα - α ∧ β)^{h+1}`.
    pub j_form_sign: Option<i8>,
    /// Sign of `(dα + α ∧ β)^{h+1}`.
    pub t_form_sign: Option<i8>,
    pub opposite_orientation: bool,
    /// Lee forms of the two fundamental forms, when they are lcs.
    pub j_lee_form: Option<KForm>,
    pub t_lee_form: Option<KForm>,
}

pub fn conjugate_t(model: &LieAlgebraModel, mcp: &MetricContactPair) -> Result<ConjugateReport> {
    let t = conjugate_endomorphism(&mcp.j, &mcp.reeb.a, &mcp.reeb.b, &mcp.alpha, &mcp.beta)?;
    let minus = minus_form(model, &mcp.alpha, &mcp.beta)?;
    let plus = plus_form(model, &mcp.alpha, &mcp.beta)?;
    let j_form_sign = minus.power(mcp.h + 1).is_volume()?.sign;
    let t_form_sign = plus.power(mcp.h + 1).is_volume()?.sign;
    Ok(ConjugateReport {
        t_squared_minus_identity: t.is_almost_complex(),
        fundamental_identity: mcp.g.matrix().mul(t.matrix())? == plus.two_form_matrix()?,
        opposite_orientation: matches!((j_form_sign, t_form_sign), (Some(a), Some(b)) if a == -b),
        j_form_sign,
        t_form_sign,
        j_lee_form: pairs::verify_lcs(model, &minus).ok().map(|l| l.theta().clone()),
        t_lee_form: pairs::verify_lcs(model, &plus).ok().map(|l| l.theta().clone()),
        t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalReport {
    pub j_integrable: bool,
    pub t_integrable: bool,
    pub l_a_j_zero: bool,
    pub l_b_j_zero: bool,
    pub normal: bool,
    /// `(N_J = N_T = 0) ⇔ (N_J = 0, L_A J = 0) ⇔ (N_J = 0, L_B J = 0)`.
    pub equivalence_holds: bool,
    pub j_witness: Option<NijenhuisWitness>,
    pub t_witness: Option<NijenhuisWitness>,
    pub l_a_j: Endomorphism,
    pub l_b_j: Endomorphism,
    pub t: Endomorphism,
}

pub fn is_normal(model: &LieAlgebraModel, mcp: &MetricContactPair) -> Result<NormalReport> {
    let t = conjugate_endomorphism(&mcp.j, &mcp.reeb.a, &mcp.reeb.b, &mcp.alpha, &mcp.beta)?;
    let nj = integrability(model, &mcp.j)?;
    let nt = integrability(model, &t)?;
    let l_a_j = model.lie_derivative_endo(&mcp.reeb.a, &mcp.j)?;
    let l_b_j = model.lie_derivative_endo(&mcp.reeb.b, &mcp.j)?;
    let normal = nj.integrable && nt.integrable;
    let via_a = nj.integrable && l_a_j.is_zero();
    let via_b = nj.integrable && l_b_j.is_zero();
    Ok(NormalReport {
        j_integrable: nj.integrable,
        t_integrable: nt.integrable,
        l_a_j_zero: l_a_j.is_zero(),
        l_b_j_zero: l_b_j.is_zero(),
        normal,
        equivalence_holds: normal == via_a && via_a == via_b,
        j_witness: nj.witness,
        t_witness: nt.witness,
        l_a_j,
        l_b_j,
        t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VaismanReport {
    pub j_integrable: bool,
    pub omega: KForm,
    pub theta: KForm,
    /// `|θ|^2` for the given metric.
    #[serde(serialize_with = "pairs::ser_scalar")]
    pub theta_norm_sq: Scalar,
    /// `θ = 0`: the structure is Kähler.
    pub kahler: bool,
    /// `∇θ = 0` as a full matrix.
    pub theta_parallel: bool,
    pub nabla_theta: Matrix,
    pub is_vaisman: bool,
    pub normalized: Option<NormalizedVaisman>,
}

/// Data of a non-Kähler structure after rescaling `g` by `|θ|^2`, which makes
/// `|θ| = 1` without leaving the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedVaisman {
    #[serde(serialize_with = "pairs::ser_scalar")]
    pub scale: Scalar,
    pub metric: MetricData,
    /// Fundamental form of the rescaled metric.
    pub omega: KForm,
    /// `β = s θ` and `α = -θ ∘ J`, with `s = lee_sign`.
    pub alpha: KForm,
    pub beta: KForm,
    /// Sign `s` for which `dα = ω + α ∧ β` holds, if any.
    pub lee_sign: Option<i8>,
    /// The identity with `β = θ` (no sign flip).
    pub identity_with_theta: bool,
    /// The identity with `β = -θ`.
    pub identity_with_minus_theta: bool,
    pub u: TangentVector,
    pub v: TangentVector,
    pub u_killing: bool,
    pub v_killing: bool,
    pub l_u_j_zero: bool,
    pub l_v_j_zero: bool,
    pub u_v_commute: bool,
}

pub fn vaisman_check(model: &LieAlgebraModel, j: &Endomorphism, g: &MetricData) -> Result<VaismanReport> {
    let n = model.dim();
    require_almost_complex(j, n)?;
    if g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
    }
    if !g.is_invariant_under(j)? {
        return Err(Error::Incompatible("g(JX, JY) ≠ g(X, Y)".into()));
    }
    let j_integrable = is_integrable(model, j)?;
    let omega = fundamental_form(g, j)?;
    let lcs = pairs::verify_lcs(model, &omega)?;
    let theta = lcs.theta().clone();
    let theta_norm_sq = g.norm_sq(&theta)?;
    let conn = model.levi_civita(g)?;
    let nabla_theta = conn.covariant_derivative_oneform(&theta)?;
    let theta_parallel = nabla_theta.is_zero();
    let kahler = theta.is_zero();

    let normalized = if kahler {
        None
    } else {
        let metric = g.scaled(&theta_norm_sq)?;
        let omega1 = omega.scale_scalar(&theta_norm_sq);
        let alpha = -compose_with(&theta, j)?;
        let d_alpha = model.ce_differential(&alpha)?;
        let holds = |beta: &KForm| -> Result<bool> { Ok(d_alpha == &omega1 + &alpha.wedge(beta)?) };
        let identity_with_theta = holds(&theta)?;
        let identity_with_minus_theta = holds(&-&theta)?;
        let lee_sign = if identity_with_theta {
            Some(1)
        } else if identity_with_minus_theta {
            Some(-1)
        } else {
            None
        };
        let beta = theta.scale_scalar(&int(lee_sign.unwrap_or(1).into()));
        let u = metric.raise(&beta)?;
        let v = -&j.apply(&u)?;
        let killing = |x: &TangentVector| -> Result<bool> { Ok(model.lie_derivative_metric(x, g)?.is_zero()) };
        Some(NormalizedVaisman {
            scale: theta_norm_sq.clone(),
            u_killing: killing(&u)?,
            v_killing: killing(&v)?,
            l_u_j_zero: model.lie_derivative_endo(&u, j)?.is_zero(),
            l_v_j_zero: model.lie_derivative_endo(&v, j)?.is_zero(),
            u_v_commute: model.bracket(&u, &v)?.is_zero(),
            metric,
            omega: omega1,
            alpha,
            beta,
            lee_sign,
            identity_with_theta,
            identity_with_minus_theta,
            u,
            v,
        })
    };

    Ok(VaismanReport {
        is_vaisman: j_integrable && theta_parallel && !kahler,
        j_integrable,
        omega,
        theta,
        theta_norm_sq,
        kahler,
        theta_parallel,
        nabla_theta,
        normalized,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VaismanToMcp {
    pub mcp: MetricContactPair,
    #[serde(serialize_with = "pairs::ser_scalar")]
    pub scale: Scalar,
    /// `(A, B) = (V, U)`.
    pub reeb_matches_vu: bool,
    pub normal: NormalReport,
}

/// Contact pair `(α, β) = (-θ ∘ J, -θ)` with metric `|θ|^2 g` from a
/// non-Kähler Vaisman structure.
pub fn vaisman_to_mcp(model: &LieAlgebraModel, j: &Endomorphism, g: &MetricData) -> Result<VaismanToMcp> {
    let report = vaisman_check(model, j, g)?;
    if report.kahler {
        return Err(Error::Precondition("Kähler case: the Lee form vanishes".into()));
    }
    if !report.is_vaisman {
        return Err(Error::Precondition("(J, g) is not Vaisman".into()));
    }
    let nv = report.normalized.expect("non-Kähler");
    if nv.lee_sign.is_none() {
        return Err(Error::Incompatible("dα = ω + α ∧ β fails for both signs of β".into()));
    }
    let mcp = MetricContactPair::new(model, &nv.alpha, &nv.beta, j, &nv.metric)?;
    let normal = is_normal(model, &mcp)?;
    Ok(VaismanToMcp {
        reeb_matches_vu: mcp.reeb.a == nv.v && mcp.reeb.b == nv.u,
        scale: nv.scale,
        mcp,
        normal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McpToVaisman {
    pub vaisman: VaismanReport,
    /// Lee form of `g(X, JY)` equals `-β`.
    pub lee_is_minus_beta: bool,
    /// `vaisman_to_mcp` gives back `(α, β, J, g)`.
    pub round_trip: bool,
}

pub fn mcp_to_vaisman(model: &LieAlgebraModel, mcp: &MetricContactPair) -> Result<McpToVaisman> {
    let normal = is_normal(model, mcp)?;
    if !normal.normal {
        return Err(Error::Precondition("metric contact pair is not normal".into()));
    }
    let vaisman = vaisman_check(model, &mcp.j, &mcp.g)?;
    let back = vaisman_to_mcp(model, &mcp.j, &mcp.g)?;
    Ok(McpToVaisman {
        lee_is_minus_beta: vaisman.theta == -&mcp.beta,
        round_trip: back.mcp == *mcp,
        vaisman,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KahlerPairReport {
    pub symplectic: SymplecticPairReport,
    pub t: Endomorphism,
    pub metric: MetricData,
    pub j_integrable: bool,
    pub t_integrable: bool,
    pub t_squared_minus_identity: bool,
    /// `g(JX, JY) = g(X, Y)` and the same for `T`.
    pub compatible: bool,
    /// `ker ω₁ ⊥ ker ω₂`.
    pub kernels_orthogonal: bool,
    /// `g(X, JY) = ω₁ + ω₂` and `g(X, TY) = ω₁ - ω₂`.
    pub fundamental_forms: bool,
    pub nabla_j_zero: bool,
    pub nabla_t_zero: bool,
    pub valid: bool,
}

fn kernel_basis(omega: &KForm) -> Result<Vec<Vec<Scalar>>> {
    Ok(omega.two_form_matrix()?.nullspace())
}

/// Checks a normal symplectic pair: `J` acts on `ker ω₂` (where `ω₁` lives)
/// and on `ker ω₁`, `T` is `J` on `ker ω₂` and `-J` on `ker ω₁`, and `g` is
/// read off from `g(X, JY) = (ω₁ + ω₂)(X, Y)`.
pub fn kahler_pair_check(model: &LieAlgebraModel, omega1: &KForm, omega2: &KForm, j: &Endomorphism) -> Result<KahlerPairReport> {
    let symplectic = pairs::verify_symplectic_pair(model, omega1, omega2)?;
    if !symplectic.valid {
        return Err(Error::Precondition("(ω₁, ω₂) is not a symplectic pair".into()));
    }
    require_almost_complex(j, model.dim())?;
    let k1 = kernel_basis(omega1)?;
    let k2 = kernel_basis(omega2)?;
    for (name, kernel, form) in [("ker ω₁", &k1, omega1), ("ker ω₂", &k2, omega2)] {
        let m = form.two_form_matrix()?;
        for z in kernel {
            let jz = j.apply(&TangentVector::new(z.clone()))?;
            if !m.mul_vec(jz.components())?.iter().all(Zero::is_zero) {
                return Err(Error::SplittingNotPreserved(format!("J does not preserve {name}")));
            }
        }
    }
    // Basis adapted to ker ω₂ ⊕ ker ω₁; T = J (1 - 2 Π) with Π the projection onto ker ω₁.
    let cols: Vec<Vec<Scalar>> = k2.iter().chain(&k1).cloned().collect();
    let p = Matrix::from_columns(&cols)?;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Incompatible("ker ω₁ and ker ω₂ do not span".into()))?;
    let n = model.dim();
    let half = k2.len();
    let select = Matrix::from_fn(n, n, |r, c| if r == c && r >= half { Scalar::one() } else { Scalar::zero() });
    let proj = p.mul(&select)?.mul(&pinv)?;
    let reflect = Matrix::identity(n).sub(&proj.scale(&int(2)))?;
    let t = Endomorphism::new(j.matrix().mul(&reflect)?)?;

    let sum = omega1 + omega2;
    let g = sum.two_form_matrix()?.mul(j.matrix())?.neg();
    if let Some((row, col)) = g.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let metric = MetricData::new(g)?;
    let compatible = metric.is_invariant_under(j)? && metric.is_invariant_under(&t)?;
    let kernels_orthogonal = k1.iter().all(|x| {
        k2.iter().all(|y| {
            metric
                .inner(&TangentVector::new(x.clone()), &TangentVector::new(y.clone()))
                .map(|s| s.is_zero())
                .unwrap_or(false)
        })
    });
    let fundamental_forms = fundamental_form(&metric, j).ok() == Some(sum.clone())
        && fundamental_form(&metric, &t).ok() == Some(omega1 - omega2);
    let conn = model.levi_civita(&metric)?;
    let nabla_j_zero = conn.covariant_derivative_endo(j)?.iter().all(Endomorphism::is_zero);
    let nabla_t_zero = conn.covariant_derivative_endo(&t)?.iter().all(Endomorphism::is_zero);
    let j_integrable = is_integrable(model, j)?;
    let t_squared_minus_identity = t.is_almost_complex();
    let t_integrable = t_squared_minus_identity && is_integrable(model, &t)?;
    Ok(KahlerPairReport {
        valid: j_integrable
            && t_integrable
            && compatible
            && kernels_orthogonal
            && fundamental_forms
            && nabla_j_zero
            && nabla_t_zero
            && symplectic.sum_symplectic
            && symplectic.difference_symplectic,
        symplectic,
        t,
        metric,
        j_integrable,
        t_integrable,
        t_squared_minus_identity,
        compatible,
        kernels_orthogonal,
        fundamental_forms,
        nabla_j_zero,
        nabla_t_zero,
    })
}
