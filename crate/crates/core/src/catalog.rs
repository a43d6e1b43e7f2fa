//! Built-in models with their designated forms, complex structures, metrics
//! and expected outcomes. Each entry's expectations are executable: see
//! [`run_expectations`].

use std::collections::BTreeMap;

use crate::complex;
use crate::document::{Expectation, ModelBundle, VaismanOutcome};
use crate::error::{Error, Result};
use crate::exterior::{KForm, TangentVector};
use crate::lie::{LieAlgebraModel, MetricData};
use crate::linalg::Endomorphism;
use crate::pairs::{self, CParameter, GeneralizedOutcome};
use crate::report::Check;
use crate::scalar::{format_scalar, int, parse_scalar};

pub const MODEL_NAMES: [&str; 6] = ["sl2r_x_r", "nil3_x_r", "c2", "h2_x_h2", "c_x_h2", "s3_x_r"];

pub fn list_models() -> Vec<&'static str> {
    MODEL_NAMES.to_vec()
}

pub fn load_model(name: &str) -> Result<ModelBundle> {
    match name {
        "sl2r_x_r" => Ok(sl2r_x_r()),
        "nil3_x_r" => Ok(nil3_x_r()),
        "c2" => Ok(c2()),
        "h2_x_h2" => Ok(h2_x_h2()),
        "c_x_h2" => Ok(c_x_h2()),
        "s3_x_r" => Ok(s3_x_r()),
        _ => Err(Error::UnknownModel(name.to_string())),
    }
}

pub fn all_models() -> Vec<ModelBundle> {
    MODEL_NAMES.iter().map(|n| load_model(n).expect("catalog names load")).collect()
}

const N: usize = 4;

fn w(i: usize) -> KForm {
    KForm::basis(N, i - 1)
}

fn w2(i: usize, j: usize, c: i64) -> KForm {
    KForm::monomial(N, &[i - 1, j - 1], int(c)).expect("valid indices")
}

fn e(i: usize) -> TangentVector {
    TangentVector::basis(N, i - 1)
}

fn endo(images: [TangentVector; 4]) -> Endomorphism {
    Endomorphism::from_images(&images).expect("square")
}

/// Model from `d w_k`, listed for k = 1..4 with `None` for closed forms.
fn model(d: [Option<KForm>; 4]) -> LieAlgebraModel {
    let d: Vec<KForm> = d.into_iter().map(|f| f.unwrap_or_else(|| KForm::zero(N, 2))).collect();
    LieAlgebraModel::from_differentials(&d).expect("catalog differentials are well formed")
}

struct Entry {
    name: &'static str,
    description: &'static str,
    notes: &'static str,
    model: LieAlgebraModel,
    forms: Vec<(&'static str, KForm)>,
    endomorphisms: Vec<(&'static str, Endomorphism)>,
    expectations: Vec<Expectation>,
}

impl Entry {
    fn build(self) -> ModelBundle {
        ModelBundle {
            name: Some(self.name.to_string()),
            description: Some(self.description.to_string()),
            notes: Some(self.notes.to_string()),
            coframe: (1..=N).map(|i| format!("w{i}")).collect(),
            model: self.model.with_name(self.name),
            forms: self.forms.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            endomorphisms: self.endomorphisms.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            metrics: BTreeMap::from([("g".to_string(), MetricData::identity(N))]),
            expectations: self.expectations,
        }
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

/// Expectations shared by the normal metric contact pair fixtures.
fn contact_pair_expectations(reeb_a: usize, circle: bool) -> Vec<Expectation> {
    let mut out = vec![
        Expectation::ContactPair {
            alpha: s("alpha"),
            beta: s("beta"),
            h: 1,
            k: 0,
            is_pair: true,
        },
        Expectation::Reeb {
            alpha: s("alpha"),
            beta: s("beta"),
            a: e(reeb_a),
            b: e(4),
        },
        Expectation::PairToLcs {
            alpha: s("alpha"),
            beta: s("beta"),
            omega: s("omega"),
            theta: s("beta"),
        },
        Expectation::LcsToPair {
            omega: s("omega"),
            x: e(4),
            alpha: s("alpha"),
            beta: s("beta"),
        },
        Expectation::GeneralizedFamily {
            alpha: s("alpha"),
            beta: s("beta"),
            excluded: vec![s("0")],
        },
        Expectation::Integrable { j: s("J"), integrable: true },
        Expectation::Normal {
            alpha: s("alpha"),
            beta: s("beta"),
            j: s("J"),
            g: s("g"),
            normal: true,
        },
        Expectation::Vaisman {
            j: s("J"),
            g: s("g"),
            outcome: VaismanOutcome::Vaisman,
        },
    ];
    if circle {
        out.push(Expectation::CircleAction {
            r: s("R"),
            alpha: s("alpha"),
            beta: s("beta"),
            j: s("J"),
            g: s("g"),
        });
    }
    out
}

/// Expectations shared by the symplectic/Kähler pair fixtures.
fn kahler_pair_expectations() -> Vec<Expectation> {
    vec![
        Expectation::SymplecticPair {
            w1: s("omega1"),
            w2: s("omega2"),
            valid: true,
        },
        Expectation::KahlerPair {
            w1: s("omega1"),
            w2: s("omega2"),
            j: s("J"),
            valid: true,
        },
        Expectation::Integrable { j: s("J"), integrable: true },
        Expectation::Vaisman {
            j: s("J"),
            g: s("g"),
            outcome: VaismanOutcome::Kahler,
        },
    ]
}

/// Je1 = e2, Je3 = e4.
fn j_12_34() -> Endomorphism {
    endo([e(2), -&e(1), e(4), -&e(3)])
}

/// Je2 = e1, Je4 = e3.
fn j_21_43() -> Endomorphism {
    endo([-&e(2), e(1), -&e(4), e(3)])
}

/// Infinitesimal rotation of span(e1, e2): Re1 = e2, Re2 = -e1.
fn rotation_12() -> Endomorphism {
    endo([e(2), -&e(1), TangentVector::zero(N), TangentVector::zero(N)])
}

fn sl2r_x_r() -> ModelBundle {
    Entry {
        name: "sl2r_x_r",
        description: "Universal cover of SL(2,R) times R",
        notes: "dw1 = w2^w3, dw2 = -w1^w3, dw3 = -w1^w2, dw4 = 0. With dw(X,Y) = -w([X,Y]) \
                the brackets are [e1,e2] = e3, [e2,e3] = -e1, [e1,e3] = e2, and e4 is central. \
                Contact pair (w3, w4) of type (1,0) with Reeb fields e3, e4. \
                J: Je1 = e2, Je4 = -e3; g is the identity. \
                omega = dw3 + w3^w4 = -w1^w2 + w3^w4. \
                R rotates span(e1,e2); it equals -ad(e3), hence is a derivation.",
        model: model([Some(w2(2, 3, 1)), Some(w2(1, 3, -1)), Some(w2(1, 2, -1)), None]),
        forms: vec![
            ("alpha", w(3)),
            ("beta", w(4)),
            ("omega", &w2(3, 4, 1) - &w2(1, 2, 1)),
        ],
        endomorphisms: vec![("J", j_12_34()), ("R", rotation_12())],
        expectations: contact_pair_expectations(3, true),
    }
    .build()
}

fn nil3_x_r() -> ModelBundle {
    Entry {
        name: "nil3_x_r",
        description: "Heisenberg group times R",
        notes: "dw3 = -w1^w2, all other differentials vanish, so [e1,e2] = e3 and e3, e4 are central. \
                Contact pair (w3, w4) of type (1,0) with Reeb fields e3, e4. \
                J: Je1 = e2, Je3 = e4; g is the identity. \
                omega = dw3 + w3^w4 = -w1^w2 + w3^w4, with omega^2 = -2 w1^w2^w3^w4. \
                R rotates span(e1,e2) and fixes e3 because the rotation has determinant 1.",
        model: model([None, None, Some(w2(1, 2, -1)), None]),
        forms: vec![
            ("alpha", w(3)),
            ("beta", w(4)),
            ("omega", &w2(3, 4, 1) - &w2(1, 2, 1)),
        ],
        endomorphisms: vec![("J", j_12_34()), ("R", rotation_12())],
        expectations: contact_pair_expectations(3, true),
    }
    .build()
}

fn c2() -> ModelBundle {
    let mut expectations = kahler_pair_expectations();
    expectations.push(Expectation::ContactPair {
        alpha: s("w1"),
        beta: s("w2"),
        h: 1,
        k: 0,
        is_pair: false,
    });
    Entry {
        name: "c2",
        description: "Abelian C^2",
        notes: "All differentials vanish. Symplectic pair (w1^w2, w3^w4); \
                J: Je2 = e1, Je4 = e3, so that g(X, JY) = w1^w2 + w3^w4 for the identity metric.",
        model: LieAlgebraModel::abelian(N),
        forms: vec![("omega1", w2(1, 2, 1)), ("omega2", w2(3, 4, 1))],
        endomorphisms: vec![("J", j_21_43())],
        expectations,
    }
    .build()
}

fn h2_x_h2() -> ModelBundle {
    Entry {
        name: "h2_x_h2",
        description: "Product of two hyperbolic planes",
        notes: "dw2 = -w1^w2 and dw4 = -w3^w4, i.e. [e1,e2] = e2 and [e3,e4] = e4: two copies of the \
                solvable group of the hyperbolic plane. d(w1^w2) = dw1^w2 - w1^dw2 = w1^w1^w2 = 0, \
                and likewise d(w3^w4) = 0; (w1^w2)^2 = (w3^w4)^2 = 0 and their product is the volume form. \
                J: Je2 = e1, Je4 = e3 preserves each factor; g is the identity.",
        model: model([None, Some(w2(1, 2, -1)), None, Some(w2(3, 4, -1))]),
        forms: vec![("omega1", w2(1, 2, 1)), ("omega2", w2(3, 4, 1))],
        endomorphisms: vec![("J", j_21_43())],
        expectations: kahler_pair_expectations(),
    }
    .build()
}

fn c_x_h2() -> ModelBundle {
    Entry {
        name: "c_x_h2",
        description: "C times the hyperbolic plane",
        notes: "dw4 = -w3^w4, i.e. [e3,e4] = e4, other differentials vanish. \
                w1^w2 and w3^w4 are closed by the same computation as for the product of hyperbolic planes. \
                J: Je2 = e1, Je4 = e3; g is the identity.",
        model: model([None, None, None, Some(w2(3, 4, -1))]),
        forms: vec![("omega1", w2(1, 2, 1)), ("omega2", w2(3, 4, 1))],
        endomorphisms: vec![("J", j_21_43())],
        expectations: kahler_pair_expectations(),
    }
    .build()
}

fn s3_x_r() -> ModelBundle {
    Entry {
        name: "s3_x_r",
        description: "S^3 times R (su(2) plus R)",
        notes: "dw1 = -w2^w3, dw2 = -w3^w1, dw3 = -w1^w2, dw4 = 0, so [e2,e3] = e1, [e3,e1] = e2, \
                [e1,e2] = e3 and e4 is central. Contact pair (w1, w4): dw1 has no w1 or w4 factor, \
                so the Reeb fields are e1, e4. J: Je1 = e4, Je2 = e3; g is the identity. \
                omega = dw1 + w1^w4 = -w2^w3 + w1^w4.",
        model: model([Some(w2(2, 3, -1)), Some(w2(1, 3, 1)), Some(w2(1, 2, -1)), None]),
        forms: vec![
            ("alpha", w(1)),
            ("beta", w(4)),
            ("omega", &w2(1, 4, 1) - &w2(2, 3, 1)),
        ],
        endomorphisms: vec![("J", endo([e(4), e(3), -&e(2), -&e(1)]))],
        expectations: contact_pair_expectations(1, false),
    }
    .build()
}

/// Human-readable label of an expectation.
pub fn expectation_label(x: &Expectation) -> String {
    match x {
        Expectation::ContactPair { alpha, beta, .. } => format!("contact_pair({alpha}, {beta})"),
        Expectation::Reeb { alpha, beta, .. } => format!("reeb({alpha}, {beta})"),
        Expectation::PairToLcs { alpha, beta, .. } => format!("pair_to_lcs({alpha}, {beta})"),
        Expectation::LcsToPair { omega, x, .. } => format!("lcs_to_pair({omega}, {x})"),
        Expectation::GeneralizedFamily { alpha, beta, .. } => format!("generalized_family({alpha}, {beta})"),
        Expectation::Integrable { j, .. } => format!("integrable({j})"),
        Expectation::Normal { j, g, .. } => format!("normal({j}, {g})"),
        Expectation::Vaisman { j, g, .. } => format!("vaisman({j}, {g})"),
        Expectation::SymplecticPair { w1, w2, .. } => format!("symplectic_pair({w1}, {w2})"),
        Expectation::KahlerPair { w1, w2, j, .. } => format!("kahler_pair({w1}, {w2}, {j})"),
        Expectation::CircleAction { r, .. } => format!("circle_action({r})"),
    }
}

fn expect(ok: bool, witness: impl FnOnce() -> String) -> Result<std::result::Result<(), String>> {
    Ok(if ok { Ok(()) } else { Err(witness()) })
}

fn run_one(b: &ModelBundle, x: &Expectation) -> Result<std::result::Result<(), String>> {
    let m = &b.model;
    match x {
        Expectation::ContactPair { alpha, beta, h, k, is_pair } => {
            let r = pairs::verify_contact_pair(m, &b.form(alpha)?, &b.form(beta)?, *h, *k)?;
            expect(r.is_pair == *is_pair, || match r.failure() {
                Some(f) => format!("expected is_pair = {is_pair}: {f}"),
                None => format!("expected is_pair = {is_pair}"),
            })
        }
        Expectation::Reeb { alpha, beta, a, b: bv } => {
            let r = pairs::reeb_fields(m, &b.form(alpha)?, &b.form(beta)?)?;
            expect(r.a == *a && r.b == *bv && r.annihilate_differentials && r.commute, || {
                format!("A = {}, B = {}, [A, B] = {}", r.a, r.b, r.bracket)
            })
        }
        Expectation::PairToLcs { alpha, beta, omega, theta } => {
            let r = pairs::pair_to_lcs(m, &b.form(alpha)?, &b.form(beta)?)?;
            let (om, th) = (b.form(omega)?, b.form(theta)?);
            expect(
                *r.lcs.omega() == om && *r.lcs.theta() == th && r.same_orientation && r.power_identity,
                || format!("ω = {}, θ = {}", r.lcs.omega(), r.lcs.theta()),
            )
        }
        Expectation::LcsToPair { omega, x, alpha, beta } => {
            let lcs = pairs::verify_lcs(m, &b.form(omega)?)?;
            let r = pairs::lcs_to_pair(m, &lcs, x)?;
            let (a, bb) = (b.form(alpha)?, b.form(beta)?);
            expect(
                r.alpha == a && r.beta == bb && r.a_is_lee && r.b_is_x && r.round_trip,
                || format!("α = {}, β = {}, A = {}, B = {}", r.alpha, r.beta, r.reeb.a, r.reeb.b),
            )
        }
        Expectation::GeneralizedFamily { alpha, beta, excluded } => {
            let want = excluded
                .iter()
                .map(|c| parse_scalar(c).map_err(|e| Error::Document { path: "excluded".into(), message: e.to_string() }))
                .collect::<Result<Vec<_>>>()?;
            let GeneralizedOutcome::Formal(f) = pairs::generalized_to_lcs(m, &b.form(alpha)?, &b.form(beta)?, &CParameter::Formal)?
            else {
                unreachable!("formal parameter gives a formal outcome")
            };
            expect(f.excluded == want && f.expansion_matches && f.lee_identity, || {
                format!(
                    "excluded = [{}], top coefficient {}",
                    f.excluded.iter().map(format_scalar).collect::<Vec<_>>().join(", "),
                    f.top_coefficient
                )
            })
        }
        Expectation::Integrable { j, integrable } => {
            let r = complex::integrability(m, &b.endomorphism(j)?)?;
            expect(r.integrable == *integrable, || match &r.witness {
                Some(w) => format!("N(e{}, e{}) = {}", w.i, w.j, w.value),
                None => "J is integrable".into(),
            })
        }
        Expectation::Normal { alpha, beta, j, g, normal } => {
            let mcp = complex::MetricContactPair::new(m, &b.form(alpha)?, &b.form(beta)?, &b.endomorphism(j)?, &b.metric(g)?)?;
            let r = complex::is_normal(m, &mcp)?;
            let conj = complex::conjugate_t(m, &mcp)?;
            expect(
                r.normal == *normal
                    && r.equivalence_holds
                    && conj.t_squared_minus_identity
                    && conj.fundamental_identity
                    && conj.opposite_orientation,
                || {
                    format!(
                        "N_J = 0: {}, N_T = 0: {}, L_A J = 0: {}, L_B J = 0: {}",
                        r.j_integrable, r.t_integrable, r.l_a_j_zero, r.l_b_j_zero
                    )
                },
            )
        }
        Expectation::Vaisman { j, g, outcome } => {
            let r = complex::vaisman_check(m, &b.endomorphism(j)?, &b.metric(g)?);
            let got = match &r {
                Ok(r) if r.is_vaisman => VaismanOutcome::Vaisman,
                Ok(r) if r.kahler => VaismanOutcome::Kahler,
                Ok(_) | Err(Error::NotLcs) | Err(Error::LeeFormNotClosed) => VaismanOutcome::Neither,
                Err(e) => return Err(e.clone()),
            };
            let complete = match (&r, got) {
                (Ok(r), VaismanOutcome::Vaisman) => r.normalized.as_ref().is_some_and(|n| {
                    n.lee_sign.is_some() && n.u_killing && n.v_killing && n.l_u_j_zero && n.l_v_j_zero && n.u_v_commute
                }),
                _ => true,
            };
            expect(got == *outcome && complete, || format!("outcome {got:?}, expected {outcome:?}"))
        }
        Expectation::SymplecticPair { w1, w2, valid } => {
            let r = pairs::verify_symplectic_pair(m, &b.form(w1)?, &b.form(w2)?)?;
            let ok = r.valid == *valid && (!r.valid || (r.sum_symplectic && r.difference_symplectic && r.opposite_orientations));
            expect(ok, || format!("valid = {}, signs {:?} / {:?}", r.valid, r.sum_sign, r.difference_sign))
        }
        Expectation::KahlerPair { w1, w2, j, valid } => {
            let r = complex::kahler_pair_check(m, &b.form(w1)?, &b.form(w2)?, &b.endomorphism(j)?)?;
            expect(r.valid == *valid, || {
                format!(
                    "N_J = 0: {}, N_T = 0: {}, ∇J = 0: {}, ∇T = 0: {}",
                    r.j_integrable, r.t_integrable, r.nabla_j_zero, r.nabla_t_zero
                )
            })
        }
        Expectation::CircleAction { r, alpha, beta, j, g } => {
            let r = circle_action(m, &b.endomorphism(r)?, &b.form(alpha)?, &b.form(beta)?, &b.endomorphism(j)?, &b.metric(g)?)?;
            expect(r.all(), || format!("{r:?}"))
        }
    }
}

/// Flags for an endomorphism `R` generating symmetries of a metric contact pair.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CircleActionReport {
    pub derivation: bool,
    pub preserves_alpha: bool,
    pub preserves_beta: bool,
    pub commutes_with_j: bool,
    pub skew: bool,
}

impl CircleActionReport {
    pub fn all(&self) -> bool {
        self.derivation && self.preserves_alpha && self.preserves_beta && self.commutes_with_j && self.skew
    }
}

pub fn circle_action(
    model: &LieAlgebraModel,
    r: &Endomorphism,
    alpha: &KForm,
    beta: &KForm,
    j: &Endomorphism,
    g: &MetricData,
) -> Result<CircleActionReport> {
    let gm = g.matrix();
    let rm = r.matrix();
    Ok(CircleActionReport {
        derivation: model.is_derivation(r)?,
        preserves_alpha: alpha.derivation_action(r)?.is_zero(),
        preserves_beta: beta.derivation_action(r)?.is_zero(),
        commutes_with_j: r.commutator(j)?.is_zero(),
        skew: rm.transpose().mul(gm)?.add(&gm.mul(rm)?)?.is_zero(),
    })
}

/// Runs every expectation attached to a bundle; each becomes one check.
pub fn run_expectations(b: &ModelBundle) -> Vec<Check> {
    b.expectations
        .iter()
        .map(|x| {
            let name = expectation_label(x);
            match run_one(b, x) {
                Ok(Ok(())) => Check::pass(name),
                Ok(Err(w)) => Check::fail(name, w),
                Err(e) => Check::fail(name, e.to_string()),
            }
        })
        .collect()
}
