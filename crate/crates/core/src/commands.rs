//! One function per user-facing command, each producing a [`Report`].
//!
//! Input problems (unknown names, malformed vectors, dimension mismatches)
//! are returned as errors; a structure that fails a precondition of the
//! command yields a failed report whose witness is the reason.

use serde::Serialize;
use serde_json::json;

use crate::catalog;
use crate::complex::{self, MetricContactPair};
use crate::document::ModelBundle;
use crate::error::{Error, Result};
use crate::exterior::{KForm, TangentVector};
use crate::pairs::{self, CParameter, GeneralizedOutcome};
use crate::report::{Check, Report};
use crate::scalar::{format_scalar, int, parse_scalar};

fn guard(command: &str, b: &ModelBundle, f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    match f() {
        Ok(r) => Ok(r),
        Err(e) if e.is_input_error() => Err(e),
        Err(e) => Ok(Report::from_error(command, b.name.as_deref(), &e)),
    }
}

fn report(command: &str, b: &ModelBundle, checks: Vec<Check>, data: impl Serialize) -> Result<Report> {
    Ok(Report::new(command, b.name.as_deref(), checks, data))
}

/// Jacobi identity plus every expectation attached to the model.
pub fn verify(b: &ModelBundle) -> Report {
    let jacobi = b.model.check_jacobi();
    let mut checks = vec![
        Check::new("jacobi identity", jacobi.holds, || match &jacobi.violation {
            Some((i, j, k, v)) => format!("cyclic sum on (e{}, e{}, e{}) is {v}", i + 1, j + 1, k + 1),
            None => String::new(),
        }),
        Check::new("d^2 = 0 on the coframe", jacobi.d_squared_vanishes, || "d(d w_k) ≠ 0 for some k".into()),
    ];
    checks.extend(catalog::run_expectations(b));
    let endos: serde_json::Map<String, serde_json::Value> = b
        .endomorphisms
        .iter()
        .map(|(name, j)| {
            let ac = j.is_almost_complex();
            let integrable = if ac { complex::is_integrable(&b.model, j).ok() } else { None };
            (name.clone(), json!({ "almost_complex": ac, "integrable": integrable }))
        })
        .collect();
    Report::new(
        "verify",
        b.name.as_deref(),
        checks,
        json!({
            "dimension": b.dim(),
            "abelian": b.model.is_abelian(),
            "forms": b.forms.keys().collect::<Vec<_>>(),
            "endomorphisms": endos,
            "metrics": b.metrics.keys().collect::<Vec<_>>(),
            "expectations": b.expectations.len(),
        }),
    )
}

pub fn contact_pair(b: &ModelBundle, alpha: &str, beta: &str, h: Option<usize>, k: Option<usize>) -> Result<Report> {
    let (a, bt) = (b.form(alpha)?, b.form(beta)?);
    guard("contact-pair", b, || {
        let (h, k) = match (h, k) {
            (Some(h), Some(k)) => (h, k),
            (h, k) => {
                let (h0, k0) = pairs::infer_type(&b.model, &bt)?;
                (h.unwrap_or(h0), k.unwrap_or(k0))
            }
        };
        let r = pairs::verify_contact_pair(&b.model, &a, &bt, h, k)?;
        let checks = vec![
            Check::new(format!("α ∧ (dα)^{h} ∧ β ∧ (dβ)^{k} is a volume form"), r.volume.is_volume, || {
                "top coefficient is 0".into()
            }),
            Check::new(format!("(dα)^{} = 0", h + 1), r.d_alpha_power_vanishes, || {
                format!("rank dα = {} > {}", r.rank_d_alpha, 2 * h)
            }),
            Check::new(format!("(dβ)^{} = 0", k + 1), r.d_beta_power_vanishes, || {
                format!("rank dβ = {} > {}", r.rank_d_beta, 2 * k)
            }),
        ];
        report("contact-pair", b, checks, &r)
    })
}

pub fn reeb(b: &ModelBundle, alpha: &str, beta: &str) -> Result<Report> {
    let (a, bt) = (b.form(alpha)?, b.form(beta)?);
    guard("reeb", b, || {
        let r = pairs::reeb_fields(&b.model, &a, &bt)?;
        let (h, k) = pairs::infer_type(&b.model, &bt)?;
        let genuine = pairs::verify_contact_pair(&b.model, &a, &bt, h, k)?.is_pair;
        let normalized = a.pair_with(&r.a)? == int(1)
            && bt.pair_with(&r.a)? == int(0)
            && a.pair_with(&r.b)? == int(0)
            && bt.pair_with(&r.b)? == int(1);
        let mut checks = vec![Check::new("α(A) = β(B) = 1, α(B) = β(A) = 0", normalized, || {
            format!("A = {}, B = {}", r.a, r.b)
        })];
        if genuine {
            checks.push(Check::new("i_A dα = i_B dα = i_A dβ = i_B dβ = 0", r.annihilate_differentials, || {
                format!("A = {}, B = {}", r.a, r.b)
            }));
            checks.push(Check::new("[A, B] = 0", r.commute, || format!("[A, B] = {}", r.bracket)));
        }
        report("reeb", b, checks, json!({ "genuine_pair": genuine, "reeb": r }))
    })
}

fn lcs_checks(b: &ModelBundle, omega: &KForm, theta: &KForm) -> Result<Vec<Check>> {
    let m = &b.model;
    let d_omega = m.ce_differential(omega)?;
    let wedge = omega.wedge(theta)?;
    let d_theta = m.ce_differential(theta)?;
    let rank = omega.two_form_rank()?;
    Ok(vec![
        Check::new("rank ω = n", rank == b.dim(), || format!("rank {rank}")),
        Check::new("dω = ω ∧ θ", d_omega == wedge, || format!("dω - ω ∧ θ = {}", &d_omega - &wedge)),
        Check::new("dθ = 0", d_theta.is_zero(), || format!("dθ = {d_theta}")),
    ])
}

pub fn to_lcs(b: &ModelBundle, alpha: &str, beta: &str, c: Option<CParameter>) -> Result<Report> {
    let (a, bt) = (b.form(alpha)?, b.form(beta)?);
    guard("to-lcs", b, || match c {
        None => {
            let r = pairs::pair_to_lcs(&b.model, &a, &bt)?;
            let mut checks = lcs_checks(b, r.lcs.omega(), r.lcs.theta())?;
            checks.push(Check::new("θ = β", r.lee_is_beta, || format!("θ = {}", r.lcs.theta())));
            checks.push(Check::new(
                format!("ω^{} and α ∧ (dα)^{} ∧ β define the same orientation", r.h + 1, r.h),
                r.same_orientation,
                || format!("signs {:?} and {:?}", r.omega_power_sign, r.pair_volume_sign),
            ));
            checks.push(Check::new(
                format!("ω^{} = {} α ∧ (dα)^{} ∧ β", r.h + 1, r.identity_factor, r.h),
                r.power_identity,
                || "power identity fails".into(),
            ));
            report(
                "to-lcs",
                b,
                checks,
                json!({
                    "omega": r.lcs.omega(),
                    "theta": r.lcs.theta(),
                    "h": r.h,
                    "omega_power_sign": r.omega_power_sign,
                    "pair_volume_sign": r.pair_volume_sign,
                    "identity_factor": r.identity_factor,
                }),
            )
        }
        Some(c) => match pairs::generalized_to_lcs(&b.model, &a, &bt, &c)? {
            GeneralizedOutcome::Numeric(n) => {
                let mut checks = lcs_checks(b, n.lcs.omega(), n.lcs.theta())?;
                checks.push(Check::new("dω_c = ω_c ∧ cβ", n.lee_identity, || "identity fails".into()));
                checks.push(Check::new("θ = cβ", n.lee_is_c_beta, || format!("θ = {}", n.lcs.theta())));
                report(
                    "to-lcs",
                    b,
                    checks,
                    json!({ "c": format_scalar(&n.c), "omega": n.lcs.omega(), "theta": n.lcs.theta() }),
                )
            }
            GeneralizedOutcome::Formal(f) => {
                let checks = vec![
                    Check::new(
                        format!("ω_c^{} = (dα)^{} + c({}) (dα)^{} ∧ α ∧ β", f.h + 1, f.h + 1, f.h + 1, f.h),
                        f.expansion_matches,
                        || format!("top coefficient {}", f.top_coefficient),
                    ),
                    Check::new("dω_c = ω_c ∧ cβ", f.lee_identity, || "identity fails".into()),
                    Check::new("some c is admissible", !f.all_excluded, || "ω_c is degenerate for every c".into()),
                ];
                report("to-lcs", b, checks, &f)
            }
        },
    })
}

pub fn from_lcs(b: &ModelBundle, omega: &str, x: &str) -> Result<Report> {
    let (om, xv) = (b.form(omega)?, b.vector(x)?);
    guard("from-lcs", b, || {
        let lcs = pairs::verify_lcs(&b.model, &om)?;
        let r = pairs::lcs_to_pair(&b.model, &lcs, &xv)?;
        let checks = vec![
            Check::pass("L_X ω = 0"),
            Check::pass("θ(X) = 1"),
            Check::new("(α, β) is a contact pair", r.pair.is_pair, || r.pair.failure().unwrap_or_default()),
            Check::new("A = L", r.a_is_lee, || format!("A = {}, L = {}", r.reeb.a, r.lee_vector)),
            Check::new("B = X", r.b_is_x, || format!("B = {}", r.reeb.b)),
            Check::new("round trip to (ω, θ)", r.round_trip, || "pair_to_lcs does not return ω".into()),
        ];
        report(
            "from-lcs",
            b,
            checks,
            json!({
                "x": xv,
                "alpha": r.alpha,
                "beta": r.beta,
                "theta": lcs.theta(),
                "reeb": { "a": r.reeb.a, "b": r.reeb.b },
                "lee_vector": r.lee_vector,
            }),
        )
    })
}

pub fn lcs(b: &ModelBundle, omega: &str) -> Result<Report> {
    let om = b.form(omega)?;
    guard("lcs", b, || {
        let l = pairs::verify_lcs(&b.model, &om)?;
        let lee = pairs::lee_vector(&b.model, &l)?;
        let mut checks = lcs_checks(b, l.omega(), l.theta())?;
        checks.push(Check::new("θ(L) = 0", lee.theta_of_l == int(0), || {
            format!("θ(L) = {}", format_scalar(&lee.theta_of_l))
        }));
        checks.push(Check::new("L_L ω = 0", lee.preserves_omega, || "L_L ω ≠ 0".into()));
        checks.push(Check::new("L_L θ = 0", lee.preserves_theta, || "L_L θ ≠ 0".into()));
        report(
            "lcs",
            b,
            checks,
            json!({ "theta": l.theta(), "lee_vector": lee.vector, "symplectic": l.is_symplectic() }),
        )
    })
}

pub fn nijenhuis(b: &ModelBundle, j: &str) -> Result<Report> {
    let jm = b.endomorphism(j)?;
    guard("nijenhuis", b, || {
        let r = complex::integrability(&b.model, &jm)?;
        let checks = vec![
            Check::pass("J ∘ J = -1"),
            Check::new("N_J = 0", r.integrable, || match &r.witness {
                Some(w) => format!("N_J(e{}, e{}) = {}", w.i, w.j, w.value),
                None => String::new(),
            }),
        ];
        report("nijenhuis", b, checks, &r)
    })
}

pub fn normal(b: &ModelBundle, alpha: &str, beta: &str, j: &str, g: &str) -> Result<Report> {
    let (a, bt, jm, gm) = (b.form(alpha)?, b.form(beta)?, b.endomorphism(j)?, b.metric(g)?);
    guard("normal", b, || {
        let mcp = MetricContactPair::new(&b.model, &a, &bt, &jm, &gm)?;
        let r = complex::is_normal(&b.model, &mcp)?;
        let t = complex::conjugate_t(&b.model, &mcp)?;
        let witness = |w: &Option<complex::NijenhuisWitness>| match w {
            Some(w) => format!("N(e{}, e{}) = {}", w.i, w.j, w.value),
            None => String::new(),
        };
        let checks = vec![
            Check::new("N_J = 0", r.j_integrable, || witness(&r.j_witness)),
            Check::new("N_T = 0", r.t_integrable, || witness(&r.t_witness)),
            Check::new("L_A J = 0", r.l_a_j_zero, || format!("L_A J = {:?}", r.l_a_j.matrix())),
            Check::new("L_B J = 0", r.l_b_j_zero, || format!("L_B J = {:?}", r.l_b_j.matrix())),
            Check::new("normality equivalences agree", r.equivalence_holds, || {
                "J, T integrable disagrees with J integrable and L_A J = 0 or L_B J = 0".into()
            }),
            Check::new("T ∘ T = -1", t.t_squared_minus_identity, || "T^2 ≠ -1".into()),
            Check::new("g(X, TY) = (dα + α ∧ β)(X, Y)", t.fundamental_identity, || "identity fails".into()),
            Check::new("fundamental forms of J and T have opposite orientations", t.opposite_orientation, || {
                format!("signs {:?} and {:?}", t.j_form_sign, t.t_form_sign)
            }),
        ];
        report(
            "normal",
            b,
            checks,
            json!({
                "reeb": { "a": mcp.reeb().a, "b": mcp.reeb().b },
                "t": r.t,
                "j_form_sign": t.j_form_sign,
                "t_form_sign": t.t_form_sign,
                "j_lee_form": t.j_lee_form,
                "t_lee_form": t.t_lee_form,
            }),
        )
    })
}

pub fn vaisman(b: &ModelBundle, j: &str, g: &str) -> Result<Report> {
    let (jm, gm) = (b.endomorphism(j)?, b.metric(g)?);
    guard("vaisman", b, || {
        let r = complex::vaisman_check(&b.model, &jm, &gm)?;
        let mut checks = vec![
            Check::new("N_J = 0", r.j_integrable, || "J is not integrable".into()),
            Check::pass("ω = g(·, J·) is lcs"),
            Check::new("∇θ = 0", r.theta_parallel, || format!("∇θ = {:?}", r.nabla_theta)),
        ];
        let case = if r.kahler { "kahler" } else if r.is_vaisman { "vaisman" } else { "lck" };
        if let Some(n) = &r.normalized {
            checks.push(Check::new("U is Killing", n.u_killing, || format!("U = {}", n.u)));
            checks.push(Check::new("V is Killing", n.v_killing, || format!("V = {}", n.v)));
            checks.push(Check::new("L_U J = 0", n.l_u_j_zero, || "L_U J ≠ 0".into()));
            checks.push(Check::new("L_V J = 0", n.l_v_j_zero, || "L_V J ≠ 0".into()));
            checks.push(Check::new("[U, V] = 0", n.u_v_commute, || "[U, V] ≠ 0".into()));
            checks.push(Check::new("dα = |θ| (ω + α ∧ β)", n.lee_sign.is_some(), || {
                "fails for β = ±θ/|θ|".into()
            }));
        }
        report(
            "vaisman",
            b,
            checks,
            json!({
                "case": case,
                "theta": r.theta,
                "theta_norm_sq": format_scalar(&r.theta_norm_sq),
                "normalized": r.normalized.as_ref().map(|n| json!({
                    "scale": format_scalar(&n.scale),
                    "alpha": n.alpha,
                    "beta": n.beta,
                    "lee_sign": n.lee_sign,
                    "identity_with_beta_equal_theta": n.identity_with_theta,
                    "u": n.u,
                    "v": n.v,
                })),
            }),
        )
    })
}

pub fn symplectic_pair(b: &ModelBundle, w1: &str, w2: &str) -> Result<Report> {
    let (a, c) = (b.form(w1)?, b.form(w2)?);
    guard("symplectic-pair", b, || {
        let r = pairs::verify_symplectic_pair(&b.model, &a, &c)?;
        let checks = symplectic_checks(&r);
        report("symplectic-pair", b, checks, &r)
    })
}

fn symplectic_checks(r: &pairs::SymplecticPairReport) -> Vec<Check> {
    vec![
        Check::new("dω₁ = 0", r.omega1_closed, || "ω₁ is not closed".into()),
        Check::new("dω₂ = 0", r.omega2_closed, || "ω₂ is not closed".into()),
        Check::new("ω₁ ∧ ω₂ is a volume form", r.product.is_volume, || "ω₁ ∧ ω₂ = 0".into()),
        Check::new("ω₁² = 0", r.omega1_square_zero, || "ω₁² ≠ 0".into()),
        Check::new("ω₂² = 0", r.omega2_square_zero, || "ω₂² ≠ 0".into()),
        Check::new("ω₁ + ω₂ and ω₁ - ω₂ are symplectic", r.sum_symplectic && r.difference_symplectic, || {
            format!("signs {:?} and {:?}", r.sum_sign, r.difference_sign)
        }),
        Check::new("ω₁ ± ω₂ have opposite orientations", r.opposite_orientations, || {
            format!("signs {:?} and {:?}", r.sum_sign, r.difference_sign)
        }),
    ]
}

pub fn kahler_pair(b: &ModelBundle, w1: &str, w2: &str, j: &str) -> Result<Report> {
    let (a, c, jm) = (b.form(w1)?, b.form(w2)?, b.endomorphism(j)?);
    guard("kahler-pair", b, || {
        let r = complex::kahler_pair_check(&b.model, &a, &c, &jm)?;
        let mut checks = symplectic_checks(&r.symplectic);
        checks.extend([
            Check::new("N_J = 0", r.j_integrable, || "J is not integrable".into()),
            Check::new("N_T = 0", r.t_integrable, || "T is not integrable".into()),
            Check::new("g is J- and T-invariant", r.compatible, || "g(JX, JY) ≠ g(X, Y)".into()),
            Check::new("ker ω₁ ⊥ ker ω₂", r.kernels_orthogonal, || "kernels are not orthogonal".into()),
            Check::new("fundamental forms are ω₁ + ω₂ and ω₁ - ω₂", r.fundamental_forms, || "mismatch".into()),
            Check::new("∇J = 0", r.nabla_j_zero, || "∇J ≠ 0".into()),
            Check::new("∇T = 0", r.nabla_t_zero, || "∇T ≠ 0".into()),
        ]);
        report("kahler-pair", b, checks, json!({ "t": r.t, "metric": r.metric }))
    })
}

/// Parses the `--c` argument: a rational or the word `formal`.
pub fn parse_c(text: &str) -> Result<CParameter> {
    if text == "formal" {
        return Ok(CParameter::Formal);
    }
    parse_scalar(text).map(CParameter::Value).map_err(|e| Error::Document {
        path: "--c".into(),
        message: e.to_string(),
    })
}

/// The lcs form in a `to-lcs` report, if any.
pub fn report_form(r: &Report, key: &str, dim: usize) -> Option<KForm> {
    let doc: crate::exterior::FormDoc = serde_json::from_value(r.data.get(key)?.clone()).ok()?;
    doc.to_form(dim, key).ok()
}

/// Vector in a report, e.g. the Reeb field `A`.
pub fn report_vector(value: &serde_json::Value) -> Option<TangentVector> {
    serde_json::from_value(value.clone()).ok()
}
