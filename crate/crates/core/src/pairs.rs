//! Contact pairs, Reeb fields, locally conformally symplectic forms and the
//! correspondence between them, plus symplectic pairs in dimension four.
//!
//! Everything is checked on the Lie algebra: for left-invariant data a
//! pointwise condition such as "is a volume form" or "has constant rank"
//! reduces to a single algebraic condition.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{IndexTuple, KForm, TangentVector, VolumeCheck};
use crate::lie::LieAlgebraModel;
use crate::linalg::{Matrix, Solution};
use crate::scalar::{format_scalar, int, Poly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactPairReport {
    pub h: usize,
    pub k: usize,
    /// `α ∧ (dα)^h ∧ β ∧ (dβ)^k`.
    pub volume: VolumeCheck,
    /// `(dα)^{h+1} = 0`.
    pub d_alpha_power_vanishes: bool,
    /// `(dβ)^{k+1} = 0`.
    pub d_beta_power_vanishes: bool,
    pub beta_closed: bool,
    pub rank_d_alpha: usize,
    pub rank_d_beta: usize,
    pub is_pair: bool,
    /// Volume condition and `dβ = 0` hold (type `(h, 0)` only).
    pub is_generalized: bool,
    /// Generalized pair whose `(dα)^{h+1}` does not vanish.
    pub is_generalized_only: bool,
    pub volume_sign: Option<i8>,
}

impl ContactPairReport {
    /// First failing condition, for error messages and witnesses.
    pub fn failure(&self) -> Option<String> {
        if !self.volume.is_volume {
            Some(format!(
                "α ∧ (dα)^{} ∧ β ∧ (dβ)^{} is not a volume form",
                self.h, self.k
            ))
        } else if !self.d_alpha_power_vanishes {
            Some(format!("(dα)^{} ≠ 0 (rank dα = {})", self.h + 1, self.rank_d_alpha))
        } else if !self.d_beta_power_vanishes {
            Some(format!("(dβ)^{} ≠ 0 (rank dβ = {})", self.k + 1, self.rank_d_beta))
        } else {
            None
        }
    }
}

fn check_one_forms(model: &LieAlgebraModel, forms: &[&KForm]) -> Result<()> {
    for f in forms {
        if f.dim() != model.dim() {
            return Err(Error::DimensionMismatch {
                expected: model.dim(),
                found: f.dim(),
            });
        }
        f.expect_degree(1)?;
    }
    Ok(())
}

/// Type `(h, k)` read off from the rank of `dβ`: `k = rank(dβ)/2` and
/// `2h + 2k + 2 = n`.
pub fn infer_type(model: &LieAlgebraModel, beta: &KForm) -> Result<(usize, usize)> {
    let n = model.dim();
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::NotContactPair(format!("dimension {n} is not even")));
    }
    let k = model.ce_differential(beta)?.two_form_rank()? / 2;
    let h = (n - 2) / 2 - k.min((n - 2) / 2);
    Ok((h, k))
}

/// Checks the three contact-pair conditions for the declared type `(h, k)`.
pub fn verify_contact_pair(
    model: &LieAlgebraModel,
    alpha: &KForm,
    beta: &KForm,
    h: usize,
    k: usize,
) -> Result<ContactPairReport> {
    check_one_forms(model, &[alpha, beta])?;
    let n = model.dim();
    if 2 * h + 2 * k + 2 != n {
        return Err(Error::NotContactPair(format!(
            "type ({h}, {k}) requires dimension {}, model has {n}",
            2 * h + 2 * k + 2
        )));
    }
    let da = model.ce_differential(alpha)?;
    let db = model.ce_differential(beta)?;
    let top = alpha
        .wedge(&da.power(h))?
        .wedge(beta)?
        .wedge(&db.power(k))?;
    let volume = top.is_volume()?;
    let d_alpha_power_vanishes = da.power(h + 1).is_zero();
    let d_beta_power_vanishes = db.power(k + 1).is_zero();
    let beta_closed = db.is_zero();
    let is_pair = volume.is_volume && d_alpha_power_vanishes && d_beta_power_vanishes;
    let is_generalized = k == 0 && volume.is_volume && beta_closed;
    Ok(ContactPairReport {
        h,
        k,
        volume,
        d_alpha_power_vanishes,
        d_beta_power_vanishes,
        beta_closed,
        rank_d_alpha: da.two_form_rank()?,
        rank_d_beta: db.two_form_rank()?,
        is_pair,
        is_generalized,
        is_generalized_only: is_generalized && !d_alpha_power_vanishes,
        volume_sign: volume.sign,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReebFields {
    pub a: TangentVector,
    pub b: TangentVector,
    /// `i_A dα = i_B dα = i_A dβ = i_B dβ = 0`.
    pub annihilate_differentials: bool,
    pub bracket: TangentVector,
    pub commute: bool,
}

fn contraction_rows(two_form: &KForm) -> Result<Matrix> {
    // Row j of the result maps Y to (i_Y a)(e_j) = a(Y, e_j) = (M^T Y)_j.
    Ok(two_form.two_form_matrix()?.transpose())
}

fn stack(blocks: &[&Matrix]) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = blocks.iter().flat_map(|m| m.to_rows()).collect();
    Matrix::from_rows(rows)
}

/// Reeb vector fields of a (possibly generalized) contact pair.
///
/// When `dβ = 0` they are the vectors of the Reeb distribution
/// `{Y : i_Y dα vanishes on ker α ∩ ker β}` normalized against `α` and `β`;
/// otherwise they solve the full system of the genuine-pair definition.
pub fn reeb_fields(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<ReebFields> {
    check_one_forms(model, &[alpha, beta])?;
    let n = model.dim();
    let da = model.ce_differential(alpha)?;
    let db = model.ce_differential(beta)?;
    let dual = Matrix::from_rows(vec![alpha.covector()?, beta.covector()?])?;

    let (a, b) = if db.is_zero() {
        let kernel = dual.nullspace();
        if kernel.len() != n - 2 {
            return Err(Error::Unsolvable("Reeb fields (α and β are dependent)".into()));
        }
        let m = da.two_form_matrix()?;
        let rows = kernel
            .iter()
            .map(|z| m.mul_vec(z))
            .collect::<Result<Vec<_>>>()?;
        let distribution = if rows.is_empty() {
            Matrix::identity(n).to_rows()
        } else {
            Matrix::from_rows(rows)?.nullspace()
        };
        if distribution.len() != 2 {
            return Err(Error::Unsolvable(format!(
                "Reeb fields (Reeb distribution has rank {})",
                distribution.len()
            )));
        }
        let basis = Matrix::from_columns(&distribution)?;
        let restricted = dual.mul(&basis)?;
        let inv = restricted
            .inverse()
            .ok_or_else(|| Error::Unsolvable("Reeb fields (α, β degenerate on the Reeb distribution)".into()))?;
        let a = basis.mul_vec(&inv.column(0))?;
        let b = basis.mul_vec(&inv.column(1))?;
        (TangentVector::new(a), TangentVector::new(b))
    } else {
        let system = stack(&[&dual, &contraction_rows(&da)?, &contraction_rows(&db)?])?;
        let solve = |target: [i64; 2]| -> Result<TangentVector> {
            let mut rhs = vec![Scalar::zero(); system.rows()];
            rhs[0] = int(target[0]);
            rhs[1] = int(target[1]);
            match system.solve(&rhs)? {
                Solution::Unique(x) => Ok(TangentVector::new(x)),
                _ => Err(Error::Unsolvable("Reeb fields".into())),
            }
        };
        (solve([1, 0])?, solve([0, 1])?)
    };

    let annihilate_differentials = [&a, &b].iter().all(|v| {
        da.interior(v).map(|f| f.is_zero()).unwrap_or(false) && db.interior(v).map(|f| f.is_zero()).unwrap_or(false)
    });
    let bracket = model.bracket(&a, &b)?;
    Ok(ReebFields {
        commute: bracket.is_zero(),
        a,
        b,
        annihilate_differentials,
        bracket,
    })
}

/// A nondegenerate two-form together with its closed Lee form,
/// `dω = ω ∧ θ`. Only constructed by [`verify_lcs`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsData {
    omega: KForm,
    theta: KForm,
}

impl LcsData {
    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    pub fn theta(&self) -> &KForm {
        &self.theta
    }

    pub fn is_symplectic(&self) -> bool {
        self.theta.is_zero()
    }
}

/// Verifies that `ω` is lcs and solves `dω = ω ∧ θ` for its Lee form.
pub fn verify_lcs(model: &LieAlgebraModel, omega: &KForm) -> Result<LcsData> {
    let n = model.dim();
    if omega.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.dim(),
        });
    }
    omega.expect_degree(2)?;
    let rank = omega.two_form_rank()?;
    if rank != n {
        return Err(Error::Degenerate { rank, dim: n });
    }
    let d_omega = model.ce_differential(omega)?;
    // Linear map η ↦ ω ∧ η from one-forms to three-forms.
    let triples: Vec<IndexTuple> = three_tuples(n);
    let images = (0..n)
        .map(|j| omega.wedge(&KForm::basis(n, j)))
        .collect::<Result<Vec<_>>>()?;
    let coef = |f: &KForm, t: IndexTuple| f.coefficient(&t.indices());
    let system = Matrix::from_fn(triples.len(), n, |r, j| coef(&images[j], triples[r]));
    let rhs: Vec<Scalar> = triples.iter().map(|&t| coef(&d_omega, t)).collect();
    let theta = match system.solve(&rhs)? {
        Solution::Unique(x) => KForm::from_covector(&x),
        Solution::Inconsistent => return Err(Error::NotLcs),
        Solution::Underdetermined { kernel, .. } => return Err(Error::LeeFormNotUnique(kernel.len())),
    };
    if !model.ce_differential(&theta)?.is_zero() {
        return Err(Error::LeeFormNotClosed);
    }
    Ok(LcsData {
        omega: omega.clone(),
        theta,
    })
}

fn three_tuples(n: usize) -> Vec<IndexTuple> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(IndexTuple::new(&[i, j, k]).expect("increasing"));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeeField {
    pub vector: TangentVector,
    #[serde(serialize_with = "ser_scalar")]
    pub theta_of_l: Scalar,
    pub preserves_omega: bool,
    pub preserves_theta: bool,
}

pub(crate) fn ser_scalar<S: serde::Serializer>(s: &Scalar, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_scalar(s))
}

/// Lee vector field `L` with `i_L ω = θ`.
pub fn lee_vector(model: &LieAlgebraModel, lcs: &LcsData) -> Result<LeeField> {
    let m = lcs.omega.two_form_matrix()?;
    let vector = match m.transpose().solve(&lcs.theta.covector()?)? {
        Solution::Unique(x) => TangentVector::new(x),
        _ => return Err(Error::Unsolvable("Lee vector field".into())),
    };
    Ok(LeeField {
        theta_of_l: lcs.theta.pair_with(&vector)?,
        preserves_omega: model.lie_derivative_form(&vector, &lcs.omega)?.is_zero(),
        preserves_theta: model.lie_derivative_form(&vector, &lcs.theta)?.is_zero(),
        vector,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    /// `L_X ω = 0`.
    pub preserves: bool,
    pub lie_derivative: KForm,
    #[serde(serialize_with = "ser_scalar")]
    pub theta_of_x: Scalar,
    /// `L_X θ = 0`.
    pub preserves_theta: bool,
    /// `L_X ω = 0` implies `L_X θ = 0`.
    pub implication_holds: bool,
}

pub fn check_infinitesimal_automorphism(
    model: &LieAlgebraModel,
    x: &TangentVector,
    lcs: &LcsData,
) -> Result<AutomorphismReport> {
    let lie_derivative = model.lie_derivative_form(x, &lcs.omega)?;
    let preserves = lie_derivative.is_zero();
    let preserves_theta = model.lie_derivative_form(x, &lcs.theta)?.is_zero();
    Ok(AutomorphismReport {
        preserves,
        lie_derivative,
        theta_of_x: lcs.theta.pair_with(x)?,
        preserves_theta,
        implication_holds: !preserves || preserves_theta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairToLcs {
    pub lcs: LcsData,
    pub h: usize,
    pub lee_is_beta: bool,
    /// Sign of `ω^{h+1}`.
    pub omega_power_sign: Option<i8>,
    /// Sign of `α ∧ (dα)^h ∧ β`.
    pub pair_volume_sign: Option<i8>,
    pub same_orientation: bool,
    /// `ω^{h+1} = (h+1) α ∧ (dα)^h ∧ β` holds exactly.
    pub power_identity: bool,
    pub identity_factor: usize,
}

fn require_pair_type_h0(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<ContactPairReport> {
    check_one_forms(model, &[alpha, beta])?;
    let n = model.dim();
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::NotContactPair(format!("dimension {n} is not even")));
    }
    verify_contact_pair(model, alpha, beta, (n - 2) / 2, 0)
}

/// `ω = dα + α ∧ β` with Lee form `β`, for a contact pair of type `(h, 0)`.
pub fn pair_to_lcs(model: &LieAlgebraModel, alpha: &KForm, beta: &KForm) -> Result<PairToLcs> {
    let report = require_pair_type_h0(model, alpha, beta)?;
    if !report.is_pair {
        return Err(Error::NotContactPair(report.failure().unwrap_or_default()));
    }
    let h = report.h;
    let da = model.ce_differential(alpha)?;
    let omega = &da + &alpha.wedge(beta)?;
    let lcs = verify_lcs(model, &omega)?;
    let pair_volume = alpha.wedge(&da.power(h))?.wedge(beta)?;
    let omega_power = omega.power(h + 1);
    let omega_power_sign = omega_power.is_volume()?.sign;
    let pair_volume_sign = pair_volume.is_volume()?.sign;
    Ok(PairToLcs {
        lee_is_beta: lcs.theta == *beta,
        lcs,
        h,
        omega_power_sign,
        pair_volume_sign,
        same_orientation: omega_power_sign.is_some() && omega_power_sign == pair_volume_sign,
        power_identity: omega_power == pair_volume.scale_scalar(&int(h as i64 + 1)),
        identity_factor: h + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsToPair {
    pub alpha: KForm,
    pub beta: KForm,
    pub pair: ContactPairReport,
    pub reeb: ReebFields,
    pub lee_vector: TangentVector,
    /// `A = L`.
    pub a_is_lee: bool,
    /// `B = X`.
    pub b_is_x: bool,
    /// `pair_to_lcs` of the result gives back `(ω, θ)`.
    pub round_trip: bool,
}

/// `(α, β) = (-i_X ω, θ)` for an infinitesimal automorphism `X` with `θ(X) = 1`.
pub fn lcs_to_pair(model: &LieAlgebraModel, lcs: &LcsData, x: &TangentVector) -> Result<LcsToPair> {
    let aut = check_infinitesimal_automorphism(model, x, lcs)?;
    if !aut.preserves {
        return Err(Error::Precondition(format!("L_X ω = {} ≠ 0", aut.lie_derivative)));
    }
    if !aut.theta_of_x.is_one() {
        return Err(Error::Precondition(format!("θ(X) = {} ≠ 1", format_scalar(&aut.theta_of_x))));
    }
    let alpha = -lcs.omega.interior(x)?;
    let beta = lcs.theta.clone();
    let pair = require_pair_type_h0(model, &alpha, &beta)?;
    if !pair.is_pair {
        return Err(Error::NotContactPair(pair.failure().unwrap_or_default()));
    }
    let reeb = reeb_fields(model, &alpha, &beta)?;
    let lee = lee_vector(model, lcs)?;
    let back = pair_to_lcs(model, &alpha, &beta)?;
    Ok(LcsToPair {
        a_is_lee: reeb.a == lee.vector,
        b_is_x: reeb.b == *x,
        round_trip: back.lcs == *lcs,
        lee_vector: lee.vector,
        alpha,
        beta,
        pair,
        reeb,
    })
}

/// The constant `c` in `ω_c = dα + c α ∧ β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CParameter {
    Value(Scalar),
    Formal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericFamilyMember {
    #[serde(serialize_with = "ser_scalar")]
    pub c: Scalar,
    pub lcs: LcsData,
    /// `dω_c = ω_c ∧ cβ`.
    pub lee_identity: bool,
    pub lee_is_c_beta: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalFamily {
    pub h: usize,
    /// Coefficient of `ω_c^{h+1}` on `w_1 ^ .. ^ w_n`, as a polynomial in `c`.
    #[serde(serialize_with = "ser_poly")]
    pub top_coefficient: Poly,
    /// Values of `c` for which `ω_c` is degenerate.
    #[serde(serialize_with = "ser_scalars")]
    pub excluded: Vec<Scalar>,
    /// Degenerate for every `c`.
    pub all_excluded: bool,
    /// The direct expansion agrees with `(dα)^{h+1} + c(h+1)(dα)^h ∧ α ∧ β`.
    pub expansion_matches: bool,
    /// `dω_c = ω_c ∧ cβ` as an identity of polynomial-coefficient forms.
    pub lee_identity: bool,
    pub admissible: String,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&p.to_string())
}

fn ser_scalars<S: serde::Serializer>(v: &[Scalar], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for s in v {
        seq.serialize_element(&format_scalar(s))?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GeneralizedOutcome {
    Numeric(NumericFamilyMember),
    Formal(FormalFamily),
}

/// lcs forms `dα + c α ∧ β` built from a generalized contact pair.
pub fn generalized_to_lcs(
    model: &LieAlgebraModel,
    alpha: &KForm,
    beta: &KForm,
    c: &CParameter,
) -> Result<GeneralizedOutcome> {
    let report = require_pair_type_h0(model, alpha, beta)?;
    if !report.is_generalized {
        return Err(Error::NotGeneralizedPair(
            report.failure().unwrap_or_else(|| "dβ ≠ 0".into()),
        ));
    }
    let h = report.h;
    let da = model.ce_differential(alpha)?;
    let ab = alpha.wedge(beta)?;
    match c {
        CParameter::Value(c) => {
            let omega = &da + &ab.scale_scalar(c);
            let c_beta = beta.scale_scalar(c);
            let lee_identity = model.ce_differential(&omega)? == omega.wedge(&c_beta)?;
            let lcs = verify_lcs(model, &omega)?;
            Ok(GeneralizedOutcome::Numeric(NumericFamilyMember {
                c: c.clone(),
                lee_is_c_beta: lcs.theta == c_beta,
                lcs,
                lee_identity,
            }))
        }
        CParameter::Formal => {
            let lift = |f: &KForm| f.map_coeffs(|s| Poly::constant(s.clone()));
            let omega = &lift(&da) + &lift(&ab).scale(&Poly::var());
            let top_coefficient = omega.power(h + 1).top_coefficient();
            let constant = da.power(h + 1).top_coefficient();
            let linear = alpha.wedge(&da.power(h))?.wedge(beta)?.top_coefficient() * int(h as i64 + 1);
            let expansion_matches = top_coefficient == Poly::new(vec![constant, linear]);
            let c_beta = lift(beta).scale(&Poly::var());
            let lee_identity = model.ce_differential(&omega)? == omega.wedge(&c_beta)?;
            let (excluded, all_excluded) = roots_of_affine(&top_coefficient);
            let admissible = describe_admissible(&excluded, all_excluded);
            Ok(GeneralizedOutcome::Formal(FormalFamily {
                h,
                top_coefficient,
                excluded,
                all_excluded,
                expansion_matches,
                lee_identity,
                admissible,
            }))
        }
    }
}

/// Roots of a polynomial of degree at most one.
fn roots_of_affine(p: &Poly) -> (Vec<Scalar>, bool) {
    match p.degree() {
        None => (Vec::new(), true),
        Some(0) => (Vec::new(), false),
        Some(1) => (vec![-p.coeff(0) / p.coeff(1)], false),
        // (α ∧ β)^2 = 0 keeps the top coefficient affine in c.
        Some(d) => unreachable!("top coefficient of degree {d}"),
    }
}

fn describe_admissible(excluded: &[Scalar], all: bool) -> String {
    if all {
        return "none".into();
    }
    if excluded.is_empty() {
        return "all c".into();
    }
    excluded
        .iter()
        .map(|c| format!("c ≠ {}", format_scalar(c)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticPairReport {
    pub omega1_closed: bool,
    pub omega2_closed: bool,
    /// `ω₁ ∧ ω₂`.
    pub product: VolumeCheck,
    pub omega1_square_zero: bool,
    pub omega2_square_zero: bool,
    pub valid: bool,
    pub sum_symplectic: bool,
    pub difference_symplectic: bool,
    /// Sign of `(ω₁ + ω₂)^2`.
    pub sum_sign: Option<i8>,
    /// Sign of `(ω₁ - ω₂)^2`.
    pub difference_sign: Option<i8>,
    pub opposite_orientations: bool,
}

pub fn verify_symplectic_pair(model: &LieAlgebraModel, omega1: &KForm, omega2: &KForm) -> Result<SymplecticPairReport> {
    if model.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: model.dim(),
        });
    }
    for f in [omega1, omega2] {
        if f.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: f.dim(),
            });
        }
        f.expect_degree(2)?;
    }
    let omega1_closed = model.ce_differential(omega1)?.is_zero();
    let omega2_closed = model.ce_differential(omega2)?.is_zero();
    let product = omega1.wedge(omega2)?.is_volume()?;
    let omega1_square_zero = omega1.power(2).is_zero();
    let omega2_square_zero = omega2.power(2).is_zero();
    let sum = omega1 + omega2;
    let difference = omega1 - omega2;
    let sum_sign = sum.power(2).is_volume()?.sign;
    let difference_sign = difference.power(2).is_volume()?.sign;
    let sum_symplectic = sum_sign.is_some() && model.ce_differential(&sum)?.is_zero();
    let difference_symplectic = difference_sign.is_some() && model.ce_differential(&difference)?.is_zero();
    Ok(SymplecticPairReport {
        valid: omega1_closed && omega2_closed && product.is_volume && omega1_square_zero && omega2_square_zero,
        omega1_closed,
        omega2_closed,
        product,
        omega1_square_zero,
        omega2_square_zero,
        sum_symplectic,
        difference_symplectic,
        sum_sign,
        difference_sign,
        opposite_orientations: matches!((sum_sign, difference_sign), (Some(a), Some(b)) if a == -b),
    })
}
