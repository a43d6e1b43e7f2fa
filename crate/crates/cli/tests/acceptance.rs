//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Algebraic claims are checked with exact rational equality (tolerance 0);
//! runtime bounds are wall-clock limits on the checks themselves.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use pairgeom::catalog;
use pairgeom::complex::{self, MetricContactPair};
use pairgeom::document::ModelBundle;
use pairgeom::exterior::TangentVector;
use pairgeom::pairs::{self, CParameter, GeneralizedOutcome, LcsData};
use pairgeom::scalar::{int, ratio};
use pairgeom::{KForm, LieAlgebraModel, Matrix, Scalar};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRng, TestRunner};
use support::*;

/// Exact equality is required everywhere; this is the only tolerance.
const EXACT: &str = "exact, tolerance 0";
const FIXTURE_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(30);
const PROPERTY_CASES: u32 = 1000;
const RANDOM_BASIS_CHANGES: usize = 120;

const PAIR_MODELS: [&str; 3] = ["sl2r_x_r", "nil3_x_r", "s3_x_r"];
const VAISMAN_MODELS: [&str; 2] = ["sl2r_x_r", "nil3_x_r"];
const KAHLER_MODELS: [&str; 3] = ["h2_x_h2", "c_x_h2", "c2"];

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn load(name: &str) -> ModelBundle {
    catalog::load_model(name).unwrap()
}

fn e(n: usize, i: usize) -> TangentVector {
    TangentVector::basis(n, i)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for name in ["sl2r_x_r", "nil3_x_r"] {
        let b = load(name);
        let m = &b.model;
        let (alpha, beta) = (b.form("alpha").unwrap(), b.form("beta").unwrap());
        ensure(alpha == KForm::basis(4, 2) && beta == KForm::basis(4, 3), || format!("{name}: forms are not w3, w4"))?;
        let pair = pairs::verify_contact_pair(m, &alpha, &beta, 1, 0).unwrap();
        ensure(pair.is_pair, || format!("{name}: not a contact pair of type (1, 0)"))?;
        let reeb = pairs::reeb_fields(m, &alpha, &beta).unwrap();
        ensure(reeb.a == e(4, 2) && reeb.b == e(4, 3), || format!("{name}: Reeb fields {} {}", reeb.a, reeb.b))?;
        let j = b.endomorphism("J").unwrap();
        ensure(j.compose(&j).unwrap() == pairgeom::Endomorphism::identity(4).neg(), || format!("{name}: J^2 ≠ -1"))?;
        ensure(complex::is_integrable(m, &j).unwrap(), || format!("{name}: N_J ≠ 0"))?;
        ensure(j.apply(&reeb.a).unwrap() == reeb.b, || format!("{name}: JA ≠ B"))?;
        ensure(m.lie_derivative_endo(&e(4, 3), &j).unwrap().is_zero(), || format!("{name}: L_e4 J ≠ 0"))?;
        let mcp = MetricContactPair::new(m, &alpha, &beta, &j, &b.metric("g").unwrap()).unwrap();
        let normal = complex::is_normal(m, &mcp).unwrap();
        ensure(normal.normal && normal.t_integrable, || format!("{name}: not normal"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < FIXTURE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{EXACT}; {:.3} s < 1 s", elapsed.as_secs_f64()))
}

/// Round trip pair -> lcs -> pair and lcs -> pair -> lcs, with Reeb identification.
fn bijection(m: &LieAlgebraModel, alpha: &KForm, beta: &KForm, x: &TangentVector, label: &str) -> Result<LcsData, String> {
    let forward = pairs::pair_to_lcs(m, alpha, beta).map_err(|e| format!("{label}: {e}"))?;
    let lcs = forward.lcs.clone();
    let expected_omega = &m.ce_differential(alpha).unwrap() + &alpha.wedge(beta).unwrap();
    ensure(*lcs.omega() == expected_omega, || format!("{label}: ω ≠ dα + α ∧ β"))?;
    ensure(lcs.theta() == beta, || format!("{label}: θ ≠ β"))?;
    let back = pairs::lcs_to_pair(m, &lcs, x).map_err(|e| format!("{label}: {e}"))?;
    ensure(&back.alpha == alpha && &back.beta == beta, || format!("{label}: lcs_to_pair does not return (α, β)"))?;
    ensure(back.reeb.a == back.lee_vector, || format!("{label}: A ≠ L"))?;
    ensure(&back.reeb.b == x, || format!("{label}: B ≠ X"))?;
    let again = pairs::pair_to_lcs(m, &back.alpha, &back.beta).unwrap();
    ensure(again.lcs.omega() == lcs.omega() && again.lcs.theta() == lcs.theta(), || {
        format!("{label}: pair_to_lcs ∘ lcs_to_pair is not the identity")
    })?;
    Ok(lcs)
}

/// The catalog pair models in the basis `e'_j = Σ_i p[i][j] e_i`, with the
/// model rebuilt from its exported `d` table.
fn transformed(b: &ModelBundle, p: &Matrix) -> (LieAlgebraModel, KForm, KForm, TangentVector) {
    let pinv = p.inverse().unwrap();
    let model = b.model.change_basis(p).unwrap();
    let mut moved = b.clone();
    moved.model = model;
    let reloaded = ModelBundle::from_json(&moved.to_document().to_json()).unwrap();
    let alpha = b.form("alpha").unwrap().pullback(p).unwrap();
    let beta = b.form("beta").unwrap().pullback(p).unwrap();
    let x = TangentVector::new(pinv.mul_vec(e(4, 3).components()).unwrap());
    (reloaded.model, alpha, beta, x)
}

fn produced_lcs_forms() -> Vec<(String, LieAlgebraModel, LcsData)> {
    let mut out = Vec::new();
    for name in PAIR_MODELS {
        let b = load(name);
        let lcs = pairs::pair_to_lcs(&b.model, &b.form("alpha").unwrap(), &b.form("beta").unwrap()).unwrap().lcs;
        out.push((name.to_string(), b.model.clone(), lcs));
    }
    let b = load("nil3_x_r");
    for c in [int(1), int(2), int(-1), ratio(1, 2)] {
        let outcome = pairs::generalized_to_lcs(
            &b.model,
            &b.form("alpha").unwrap(),
            &b.form("beta").unwrap(),
            &CParameter::Value(c.clone()),
        )
        .unwrap();
        if let GeneralizedOutcome::Numeric(n) = outcome {
            out.push((format!("nil3_x_r c={c}"), b.model.clone(), n.lcs));
        }
    }
    out
}

fn random_basis_changes() -> Vec<Matrix> {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(Config::default().rng_algorithm));
    let strategy = invertible(4);
    (0..RANDOM_BASIS_CHANGES)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for name in PAIR_MODELS {
        let b = load(name);
        bijection(&b.model, &b.form("alpha").unwrap(), &b.form("beta").unwrap(), &e(4, 3), name)?;
        cases += 1;
    }
    for (n, p) in random_basis_changes().iter().enumerate() {
        let b = load(PAIR_MODELS[n % PAIR_MODELS.len()]);
        let (m, alpha, beta, x) = transformed(&b, p);
        ensure(m.check_jacobi().holds, || format!("random case {n}: transformed model violates Jacobi"))?;
        bijection(&m, &alpha, &beta, &x, &format!("random case {n} on {}", b.name.as_deref().unwrap()))?;
        cases += 1;
    }
    Ok(format!("{EXACT}; {cases} cases, {RANDOM_BASIS_CHANGES} of them random basis changes"))
}

fn lcs_identities(label: &str, m: &LieAlgebraModel, lcs: &LcsData) -> Result<(), String> {
    let (omega, theta) = (lcs.omega(), lcs.theta());
    let n = m.dim();
    ensure(m.ce_differential(omega).unwrap() == omega.wedge(theta).unwrap(), || format!("{label}: dω ≠ ω ∧ θ"))?;
    ensure(m.ce_differential(theta).unwrap().is_zero(), || format!("{label}: dθ ≠ 0"))?;
    ensure(omega.two_form_rank().unwrap() == n, || format!("{label}: rank ω < n"))?;
    let lee = pairs::lee_vector(m, lcs).unwrap().vector;
    ensure(omega.interior(&lee).unwrap() == *theta, || format!("{label}: i_L ω ≠ θ"))?;
    ensure(theta.pair_with(&lee).unwrap().is_zero(), || format!("{label}: θ(L) ≠ 0"))?;
    ensure(m.lie_derivative_form(&lee, omega).unwrap().is_zero(), || format!("{label}: L_L ω ≠ 0"))?;
    ensure(m.lie_derivative_form(&lee, theta).unwrap().is_zero(), || format!("{label}: L_L θ ≠ 0"))?;
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (label, m, lcs) in produced_lcs_forms() {
        lcs_identities(&label, &m, &lcs)?;
        count += 1;
    }
    for (n, p) in random_basis_changes().iter().enumerate() {
        let b = load(PAIR_MODELS[n % PAIR_MODELS.len()]);
        let (m, alpha, beta, _) = transformed(&b, p);
        let lcs = pairs::pair_to_lcs(&m, &alpha, &beta).unwrap().lcs;
        lcs_identities(&format!("random case {n}"), &m, &lcs)?;
        count += 1;
    }
    Ok(format!("{EXACT}; {count} lcs forms"))
}

fn criterion_4() -> Outcome {
    for name in PAIR_MODELS {
        let b = load(name);
        let (alpha, beta) = (b.form("alpha").unwrap(), b.form("beta").unwrap());
        let r = pairs::pair_to_lcs(&b.model, &alpha, &beta).unwrap();
        let omega_top = r.lcs.omega().power(r.h + 1).top_coefficient();
        let pair_top = alpha
            .wedge(&b.model.ce_differential(&alpha).unwrap().power(r.h))
            .unwrap()
            .wedge(&beta)
            .unwrap()
            .top_coefficient();
        ensure(!omega_top.is_zero() && (omega_top.clone() * pair_top.clone()) > Scalar::zero(), || {
            format!("{name}: ω^(h+1) has top coefficient {omega_top}, α ∧ (dα)^h ∧ β has {pair_top}")
        })?;
    }
    for name in VAISMAN_MODELS {
        let b = load(name);
        let mcp = MetricContactPair::new(
            &b.model,
            &b.form("alpha").unwrap(),
            &b.form("beta").unwrap(),
            &b.endomorphism("J").unwrap(),
            &b.metric("g").unwrap(),
        )
        .unwrap();
        let t = complex::conjugate_t(&b.model, &mcp).unwrap();
        let g = mcp.metric();
        let h = mcp.h() + 1;
        let fj = complex::fundamental_form(g, mcp.j()).unwrap().power(h).top_coefficient();
        let ft = complex::fundamental_form(g, &t.t).unwrap().power(h).top_coefficient();
        ensure((fj.clone() * ft.clone()) < Scalar::zero(), || format!("{name}: top powers {fj} and {ft}"))?;
    }
    Ok(format!("{EXACT}; {} pairs, {} Vaisman fixtures", PAIR_MODELS.len(), VAISMAN_MODELS.len()))
}

fn criterion_5() -> Outcome {
    let b = load("nil3_x_r");
    let (alpha, beta) = (b.form("alpha").unwrap(), b.form("beta").unwrap());
    match pairs::generalized_to_lcs(&b.model, &alpha, &beta, &CParameter::Formal).unwrap() {
        GeneralizedOutcome::Formal(f) => {
            ensure(f.excluded == vec![Scalar::zero()] && !f.all_excluded, || format!("excluded set {:?}", f.excluded))?;
            ensure(f.admissible == "c ≠ 0", || format!("admissible set {}", f.admissible))?;
        }
        GeneralizedOutcome::Numeric(_) => return Err("formal analysis returned a numeric result".into()),
    }
    for c in [int(1), int(2), int(-1), ratio(1, 2)] {
        let omega = &b.model.ce_differential(&alpha).unwrap() + &alpha.wedge(&beta).unwrap().scale(&c);
        let cb = beta.scale(&c);
        ensure(b.model.ce_differential(&omega).unwrap() == omega.wedge(&cb).unwrap(), || format!("c = {c}: dω_c ≠ ω_c ∧ cβ"))?;
        ensure(omega.two_form_rank().unwrap() == 4, || format!("c = {c}: ω_c degenerate"))?;
        let via_lib = pairs::generalized_to_lcs(&b.model, &alpha, &beta, &CParameter::Value(c.clone())).unwrap();
        match via_lib {
            GeneralizedOutcome::Numeric(n) => ensure(*n.lcs.omega() == omega && n.lee_identity, || format!("c = {c}: library disagrees"))?,
            GeneralizedOutcome::Formal(_) => return Err("numeric c returned a formal result".into()),
        }
    }
    let omega0 = b.model.ce_differential(&alpha).unwrap();
    ensure(omega0.two_form_rank().unwrap() < 4, || "c = 0: ω_0 nondegenerate".into())?;
    ensure(
        pairs::generalized_to_lcs(&b.model, &alpha, &beta, &CParameter::Value(Scalar::zero())).is_err(),
        || "c = 0 accepted".into(),
    )?;
    Ok(format!("{EXACT}; admissible set c ≠ 0, c ∈ {{1, 2, -1, 1/2}} checked, c = 0 rejected"))
}

fn criterion_6() -> Outcome {
    for name in VAISMAN_MODELS {
        let b = load(name);
        let (j, g) = (b.endomorphism("J").unwrap(), b.metric("g").unwrap());
        let r = complex::vaisman_check(&b.model, &j, &g).unwrap();
        let nabla = b.model.levi_civita(&g).unwrap();
        ensure(nabla.covariant_derivative_oneform(&r.theta).unwrap().is_zero(), || format!("{name}: ∇θ ≠ 0"))?;
        ensure(r.theta_norm_sq.is_one(), || format!("{name}: |θ|^2 = {}", r.theta_norm_sq))?;
        let n = r.normalized.as_ref().ok_or_else(|| format!("{name}: reported Kähler"))?;
        let m = &b.model;
        let killing = |v: &TangentVector| m.lie_derivative_metric(v, &n.metric).unwrap().is_zero();
        ensure(killing(&n.u), || format!("{name}: U not Killing"))?;
        ensure(killing(&n.v), || format!("{name}: L_V g ≠ 0"))?;
        ensure(m.bracket(&n.u, &n.v).unwrap().is_zero(), || format!("{name}: [U, V] ≠ 0"))?;
        ensure(m.lie_derivative_endo(&n.u, &j).unwrap().is_zero(), || format!("{name}: L_U J ≠ 0"))?;
        ensure(m.lie_derivative_endo(&n.v, &j).unwrap().is_zero(), || format!("{name}: L_V J ≠ 0"))?;
        // Recorded sign: β = -θ, α = -θ ∘ J.
        let beta = -&r.theta;
        let alpha = -&complex::compose_with(&r.theta, &j).unwrap();
        let omega = complex::fundamental_form(&n.metric, &j).unwrap();
        let rhs = &omega + &alpha.wedge(&beta).unwrap();
        ensure(m.ce_differential(&alpha).unwrap() == rhs, || format!("{name}: dα ≠ |θ|(ω + α ∧ β)"))?;
        ensure(n.lee_sign == Some(-1), || format!("{name}: lee sign {:?}", n.lee_sign))?;
    }
    let c2 = load("c2");
    let r = complex::vaisman_check(&c2.model, &c2.endomorphism("J").unwrap(), &c2.metric("g").unwrap()).unwrap();
    ensure(r.kahler && r.theta.is_zero(), || "c2: not reported as Kähler".into())?;
    for name in PAIR_MODELS {
        let b = load(name);
        let (j, g) = (b.endomorphism("J").unwrap(), b.metric("g").unwrap());
        let mcp = MetricContactPair::new(&b.model, &b.form("alpha").unwrap(), &b.form("beta").unwrap(), &j, &g).unwrap();
        let normal = complex::is_normal(&b.model, &mcp).unwrap().normal;
        let vaisman = complex::vaisman_check(&b.model, &j, &g).unwrap().is_vaisman;
        ensure(normal == vaisman, || format!("{name}: normal = {normal}, Vaisman = {vaisman}"))?;
        let there = complex::mcp_to_vaisman(&b.model, &mcp).unwrap();
        ensure(there.round_trip && there.lee_is_minus_beta, || format!("{name}: mcp -> Vaisman round trip fails"))?;
        let back = complex::vaisman_to_mcp(&b.model, &j, &g).unwrap();
        ensure(back.reeb_matches_vu && back.normal.normal, || format!("{name}: Vaisman -> mcp fails"))?;
    }
    Ok(format!("{EXACT}; lee sign -1 (β = -θ); {} fixtures for normal ⇔ Vaisman", PAIR_MODELS.len()))
}

fn criterion_7() -> Outcome {
    for name in KAHLER_MODELS {
        let b = load(name);
        let (w1, w2, j) = (b.form("omega1").unwrap(), b.form("omega2").unwrap(), b.endomorphism("J").unwrap());
        let s = pairs::verify_symplectic_pair(&b.model, &w1, &w2).unwrap();
        ensure(s.valid, || format!("{name}: not a symplectic pair"))?;
        let k = complex::kahler_pair_check(&b.model, &w1, &w2, &j).unwrap();
        ensure(k.valid, || format!("{name}: not a Kähler pair"))?;
        let nabla = b.model.levi_civita(&k.metric).unwrap();
        ensure(nabla.covariant_derivative_endo(&j).unwrap().iter().all(|d| d.is_zero()), || format!("{name}: ∇J ≠ 0"))?;
        let sum = (&w1 + &w2).power(2).top_coefficient();
        let diff = (&w1 - &w2).power(2).top_coefficient();
        ensure(sum.clone() * diff.clone() < Scalar::zero(), || format!("{name}: (ω₁ ± ω₂)^2 tops {sum}, {diff}"))?;
    }
    Ok(format!("{EXACT}; {} models", KAHLER_MODELS.len()))
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config::with_cases(PROPERTY_CASES));
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let two_forms = |n: usize| (0..=n).prop_flat_map(move |p| (0..=n).prop_flat_map(move |q| (form(n, p), form(n, q))));
    run_property("graded commutativity", dim().prop_flat_map(two_forms), |(a, b)| {
        let sign = if (a.degree() * b.degree()) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
        Ok(())
    })?;
    let antideriv = |n: usize| (1..=n).prop_flat_map(move |p| (form(n, p), (1..=2usize).prop_flat_map(move |q| form(n, q)), vector(n)));
    run_property("interior antiderivation", dim().prop_flat_map(antideriv), |(a, b, x)| {
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let first = a.interior(&x).unwrap().wedge(&b).unwrap();
        let second = a.wedge(&b.interior(&x).unwrap()).unwrap();
        let rhs = if a.degree() % 2 == 0 { &first + &second } else { &first - &second };
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })?;
    let cartan = |n: usize| (lie_algebra(n), (0..=n).prop_flat_map(move |p| form(n, p)), vector(n));
    run_property("Cartan formula", dim().prop_flat_map(cartan), |(m, a, x)| {
        let lhs = m.lie_derivative_form(&x, &a).unwrap();
        let d = m.ce_differential(&a).unwrap();
        let mut rhs = if d.degree() == 0 { KForm::zero(m.dim(), 0) } else { d.interior(&x).unwrap() };
        if a.degree() > 0 {
            rhs = &rhs + &m.ce_differential(&a.interior(&x).unwrap()).unwrap();
        }
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, a.derivation_action(&m.ad(&x).unwrap()).unwrap());
        Ok(())
    })?;
    let random_model = (2usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec((0..n, 0..n, 0..n, prop::sample::select(vec![-1i64, 1])), 0..5))
    });
    run_property("d² = 0 ⇔ Jacobi", random_model, |(n, entries)| {
        let entries: Entries = entries.into_iter().filter(|&(i, j, _, _)| i != j).collect();
        let m = build(n, &entries);
        let oracle = jacobi_oracle(&m);
        let d_squared = (0..n).all(|k| m.ce_differential(m.coframe_differential(k)).unwrap().is_zero());
        prop_assert_eq!(d_squared, oracle);
        prop_assert_eq!(m.check_jacobi().holds, oracle);
        Ok(())
    })?;
    let evaluation = |n: usize| {
        (1..=3usize, 1..=2usize).prop_flat_map(move |(p, q)| {
            let p = p.min(n - 1);
            let q = q.min(n - p);
            (form(n, p), form(n, q), prop::collection::vec(vector(n), p + q))
        })
    };
    run_property("evaluate and wedge against permutation expansion", dim().prop_flat_map(evaluation), |(a, b, vs)| {
        let (p, q) = (a.degree(), b.degree());
        prop_assert_eq!(a.evaluate(&vs[..p]).unwrap(), evaluate_oracle(&a, &vs[..p]));
        let mut total = Scalar::zero();
        for perm in permutations(p + q) {
            let first: Vec<_> = perm[..p].iter().map(|&i| vs[i].clone()).collect();
            let second: Vec<_> = perm[p..].iter().map(|&i| vs[i].clone()).collect();
            total += int(sign_of_permutation(&perm)) * evaluate_oracle(&a, &first) * evaluate_oracle(&b, &second);
        }
        let expected = total / int(factorial(p) * factorial(q));
        prop_assert_eq!(a.wedge(&b).unwrap().evaluate(&vs).unwrap(), expected);
        Ok(())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < PROPERTY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{EXACT}; 5 properties x {PROPERTY_CASES} cases, dims 2-6; {:.1} s < 30 s", elapsed.as_secs_f64()))
}

fn pairgeom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pairgeom")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

fn criterion_9() -> Outcome {
    let reports = schema("report.schema.json");
    let models = schema("model.schema.json");
    let dir = tempfile::tempdir().unwrap();
    let check_report = |label: &str, stdout: &str| -> Result<serde_json::Value, String> {
        let v: serde_json::Value = serde_json::from_str(stdout).map_err(|e| format!("{label}: not JSON: {e}"))?;
        reports.validate(&v).map_err(|e| format!("{label}: report violates schema: {e}"))?;
        Ok(v)
    };
    let mut reports_checked = 0;
    for name in catalog::list_models() {
        let file = dir.path().join(format!("{name}.json"));
        let file = file.to_str().unwrap();
        let (code, _, err) = pairgeom(&["catalog", "show", name, "--export", file]);
        ensure(code == 0, || format!("export {name}: exit {code}: {err}"))?;
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
        models.validate(&doc).map_err(|e| format!("{name}: model violates schema: {e}"))?;
        let (code, out, _) = pairgeom(&["verify", file, "--format", "json"]);
        let v = check_report(name, &out)?;
        reports_checked += 1;
        ensure(code == 0 && v["passed"] == true, || format!("verify {name}: exit {code}"))?;
    }
    let nil = dir.path().join("nil3_x_r.json");
    let nil = nil.to_str().unwrap();
    let passing: [&[&str]; 8] = [
        &["contact-pair", nil, "--alpha", "alpha", "--beta", "beta"],
        &["reeb", nil, "--alpha", "alpha", "--beta", "beta"],
        &["to-lcs", nil, "--alpha", "alpha", "--beta", "beta", "--c", "formal"],
        &["from-lcs", nil, "--omega", "omega", "--x", "e4"],
        &["lcs", nil, "--omega", "omega"],
        &["nijenhuis", nil, "--j", "J"],
        &["normal", nil, "--alpha", "alpha", "--beta", "beta", "--j", "J", "--g", "g"],
        &["vaisman", nil, "--j", "J", "--g", "g"],
    ];
    for args in passing {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let (code, out, _) = pairgeom(&full);
        check_report(args[0], &out)?;
        reports_checked += 1;
        ensure(code == 0, || format!("{}: exit {code}", args[0]))?;
    }
    for args in [
        ["symplectic-pair", "c_x_h2", "--w1", "omega1", "--w2", "omega2"].as_slice(),
        &["kahler-pair", "h2_x_h2", "--w1", "omega1", "--w2", "omega2", "--j", "J"],
    ] {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let (code, out, _) = pairgeom(&full);
        check_report(args[0], &out)?;
        reports_checked += 1;
        ensure(code == 0, || format!("{}: exit {code}", args[0]))?;
    }
    let (code, out, _) = pairgeom(&["from-lcs", nil, "--omega", "omega", "--x", "e2", "--format", "json"]);
    let v = check_report("from-lcs e2", &out)?;
    reports_checked += 1;
    ensure(code == 1 && v["passed"] == false, || format!("failing check: exit {code}"))?;
    ensure(v["checks"][0]["witness"].is_string(), || "failing check without witness".into())?;
    let (code, _, _) = pairgeom(&["contact-pair", nil, "--alpha", "w1", "--beta", "w2"]);
    ensure(code == 1, || format!("non-pair: exit {code}"))?;

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dimension": 3, "d": {"w3": [{"i": 1, "j": 2, "coeff": "one"}]}}"#).unwrap();
    let (code, out, err) = pairgeom(&["verify", bad.to_str().unwrap()]);
    ensure(code == 2 && out.is_empty(), || format!("malformed model: exit {code}"))?;
    ensure(err.contains("d.w3[0].coeff"), || format!("malformed model: no position in {err:?}"))?;
    for args in [
        ["reeb", nil, "--alpha", "alpha", "--beta", "missing"].as_slice(),
        &["from-lcs", nil, "--omega", "omega", "--x", "1,0"],
        &["verify", "no_such_model"],
        &["catalog", "show", "no_such_model"],
    ] {
        let (code, _, _) = pairgeom(args);
        ensure(code == 2, || format!("{args:?}: exit {code}, expected 2"))?;
    }
    Ok(format!("{reports_checked} schema-valid reports; exit codes 0/1/2; {} catalog round trips", catalog::list_models().len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("fixture reproduction", criterion_1),
        ("pair/lcs bijection", criterion_2),
        ("lcs identities", criterion_3),
        ("orientation claims", criterion_4),
        ("generalized-pair family", criterion_5),
        ("Vaisman suite", criterion_6),
        ("symplectic and Kähler pairs", criterion_7),
        ("core-algebra properties", criterion_8),
        ("CLI contract", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let label = format!("{} {name}", n + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {label}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {label}: FAIL ({why})");
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
