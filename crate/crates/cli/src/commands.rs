use std::time::Instant;

use filtra_core::exactmat::{IntMat, ModMat, Modulus, SquareMatrix};
use filtra_core::filtration::{
    check_p_congruence_with_limit, congruence_generators, enumeration_limit, kernel_enumerate_with_limit,
    CongruenceFiltration, Filtration,
};
use filtra_core::freegroup::{
    mccool_generators, mccool_inverse, poison_generator, poison_inverse, verify_automorphism, CoveringAction,
};
use filtra_core::graded::{
    bracket, power_map, verify_basis_classes, verify_relations, verify_well_defined, GradedClass,
};
use filtra_core::holomorph::{verify_identities, Action, ConjugationAction, GammaElem, MatrixGroup, PiElem};
use filtra_core::linrep::{congruence_ball, verify_action_samples, verify_embedding, verify_faithful, DeltaElem};
use filtra_core::stability::{
    check_generator_bound, check_literal_stably_lie_like, congruence_extension, poison_extension, replay, run_all,
    trivial_extension, CheckParams, Counterexample, Extension,
};
use filtra_core::{FiltraError, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{
    BackendArg, Command, ExampleArg, FixturesArgs, GradedCommand, IdentitiesArgs, Outcome, RepArgs, ReplayArgs,
    RunError, StabilityArgs,
};

/// Largest quotient the generator-count check enumerates.
const GENERATOR_BOUND_LIMIT: u64 = 1_000_000;

fn config(args: &impl Serialize) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub(crate) fn dispatch(command: &Command) -> std::result::Result<(String, Value, Outcome), RunError> {
    let (name, cfg, outcome) = match command {
        Command::Quotient(a) => {
            let t = kernel_enumerate_with_limit(a.p, a.i, a.j, a.family.into(), enumeration_limit())?;
            let line = format!(
                "order {}, exponent {}, d {}",
                t.order,
                t.exponent,
                t.d.map_or("-".to_string(), |d| d.to_string())
            );
            ("quotient", config(a), Outcome::new(&t, true).line(line))
        }
        Command::PCongruence(a) => {
            let filt = CongruenceFiltration::new(a.family.into(), a.p, a.r0, a.jmax)?;
            let r = check_p_congruence_with_limit(&filt, a.jmax, a.bound, enumeration_limit())?;
            let line = match r.first_failure() {
                Some((i, j)) => format!("first unbounded pair (i, j) = ({i}, {j})"),
                None => format!("all pairs bounded by {}", a.bound),
            };
            let passed = r.passed();
            (
                "p-congruence",
                config(a),
                Outcome::new(json!({ "report": r, "first_failure": r.first_failure() }), passed).line(line),
            )
        }
        Command::Stability(a) => ("stability", config(a), stability(a)?),
        Command::Replay(a) => ("replay", config(a), replay_command(a)?),
        Command::Graded { command } => match command {
            GradedCommand::Bracket(a) => {
                let x = GradedClass::parse(a.p, a.q, &a.x)?;
                let y = GradedClass::parse(a.p, a.s, &a.y)?;
                let z = bracket(&x, &y)?;
                let out = json!({ "level": z.level(), "class": z.to_string(), "coords": z.coords() });
                ("graded bracket", config(a), Outcome::new(out, true).line(format!("[({x}), ({y})] = ({z})")))
            }
            GradedCommand::Power(a) => {
                let x = GradedClass::parse(a.p, a.q, &a.x)?;
                let z = power_map(&x)?;
                let out = json!({ "level": z.level(), "class": z.to_string(), "coords": z.coords() });
                ("graded power", config(a), Outcome::new(out, true).line(format!("psi({x}) = ({z})")))
            }
            GradedCommand::Verify(a) => {
                let mut timings = std::collections::BTreeMap::new();
                let t = Instant::now();
                let relations = verify_relations(a.p, a.qmax)?;
                timings.insert("relations_ms".to_string(), ms(t));
                let t = Instant::now();
                let classes = verify_basis_classes(a.p, a.qmax)?;
                timings.insert("basis_classes_ms".to_string(), ms(t));
                let t = Instant::now();
                let well_defined = verify_well_defined(a.p, a.qmax, a.perturbations, a.seed)?;
                timings.insert("well_defined_ms".to_string(), ms(t));
                let passed = relations.passed() && classes.iter().all(|c| c.holds) && well_defined.passed();
                let out = json!({
                    "relations": relations,
                    "relations_passed": relations.passed(),
                    "basis_classes": classes,
                    "well_defined": well_defined,
                    "well_defined_passed": well_defined.passed(),
                });
                let mut o = Outcome::new(out, passed)
                    .line(format!("relations: {} checks, pass = {}", relations.checks.len(), relations.passed()))
                    .line(format!("basis classes: {} checks", classes.len()))
                    .line(format!(
                        "perturbed brackets: {} samples, {} failures",
                        well_defined.samples,
                        well_defined.failures.len()
                    ));
                o.timings = timings;
                ("graded verify", config(a), o)
            }
        },
        Command::Rep(a) => ("rep", config(a), rep(a)?),
        Command::HolomorphIdentities(a) => ("holomorph-identities", config(a), identities(a)?),
        Command::FreegroupFixtures(a) => ("freegroup-fixtures", config(a), fixtures(a)?),
    };
    Ok((name.to_string(), cfg, outcome))
}

fn stability(a: &StabilityArgs) -> Result<Outcome> {
    let e = &a.extension;
    let mut outcome = match e.example {
        ExampleArg::Congruence => run_stability(&congruence_extension(e.p, e.r0, e.s0, e.cap)?, a)?,
        ExampleArg::Poison => run_stability(&poison_extension()?, a)?,
        ExampleArg::Trivial => run_stability(&trivial_extension(e.p, e.r0, e.s0, e.cap)?, a)?,
    };
    if a.generator_bound {
        if e.example != ExampleArg::Congruence {
            return Err(FiltraError::InvalidArgument("--generator-bound needs --example congruence".into()));
        }
        let t = Instant::now();
        let sum = a.sum_max.unwrap_or(e.cap);
        let report = check_generator_bound(e.p, e.r0, e.s0, sum, GENERATOR_BOUND_LIMIT)?;
        outcome.timings.insert("generator_bound_ms".into(), ms(t));
        let checked = report.cells.iter().filter(|c| c.passed.is_some()).count();
        outcome.summary.push(format!(
            "generator_bound: {checked}/{} cells enumerated, pass = {}",
            report.cells.len(),
            report.passed
        ));
        outcome.passed &= report.passed;
        outcome.results["generator_bound"] = serde_json::to_value(report).expect("serializes");
    }
    Ok(outcome)
}

fn run_stability<A, FG, FP>(ext: &Extension<A, FG, FP>, a: &StabilityArgs) -> Result<Outcome>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    let cap = ext.cap();
    let params = CheckParams::new(a.rmax.unwrap_or(cap), a.smax.unwrap_or(cap), a.sum_max.unwrap_or(cap), a.seed)
        .with_count(a.count)
        .with_radius(a.radius);
    let t = Instant::now();
    let suites = run_all(ext, &params)?;
    let mut timings = std::collections::BTreeMap::new();
    timings.insert("suites_ms".to_string(), ms(t));
    let passed = suites.iter().all(|s| s.passed);
    let mut summary: Vec<String> = suites
        .iter()
        .map(|s| format!("{}: {} samples, {} failures, pass = {}", s.suite, s.samples, s.failure_count, s.passed))
        .collect();
    let mut results = json!({ "extension": ext.name, "cap": cap, "params": params, "suites": suites });
    if a.literal {
        let lit = check_literal_stably_lie_like(ext, &params)?;
        summary.push(format!("{} (diagnostic): {} failures", lit.suite, lit.failure_count));
        results["literal"] = serde_json::to_value(lit).expect("serializes");
    }
    Ok(Outcome { results, passed, summary, timings })
}

fn replay_command(a: &ReplayArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| FiltraError::InvalidArgument(format!("cannot read {}: {e}", a.input.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| FiltraError::Parse(e.to_string()))?;
    let cxs = collect_counterexamples(&value)?;
    if cxs.is_empty() {
        return Err(FiltraError::InvalidArgument("no counterexamples in the input".into()));
    }
    let e = &a.extension;
    let reproduced: Vec<bool> = match e.example {
        ExampleArg::Congruence => replay_all(&congruence_extension(e.p, e.r0, e.s0, e.cap)?, &cxs)?,
        ExampleArg::Poison => replay_all(&poison_extension()?, &cxs)?,
        ExampleArg::Trivial => replay_all(&trivial_extension(e.p, e.r0, e.s0, e.cap)?, &cxs)?,
    };
    let rows: Vec<Value> =
        cxs.iter().zip(&reproduced).map(|(c, r)| json!({ "counterexample": c, "reproduced": r })).collect();
    let n_ok = reproduced.iter().filter(|&&r| r).count();
    let passed = n_ok == cxs.len();
    Ok(Outcome::new(json!({ "replayed": rows }), passed)
        .line(format!("{n_ok}/{} counterexamples reproduced", cxs.len())))
}

fn replay_all<A, FG, FP>(ext: &Extension<A, FG, FP>, cxs: &[Counterexample]) -> Result<Vec<bool>>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    cxs.iter().map(|c| replay(ext, c)).collect()
}

/// Accepts a full stability report, a list of counterexamples, or one.
fn collect_counterexamples(v: &Value) -> Result<Vec<Counterexample>> {
    let parse =
        |v: &Value| serde_json::from_value::<Counterexample>(v.clone()).map_err(|e| FiltraError::Parse(e.to_string()));
    if let Some(suites) = v.pointer("/results/suites").and_then(Value::as_array) {
        let mut out = Vec::new();
        for s in suites {
            for f in s.get("failures").and_then(Value::as_array).into_iter().flatten() {
                out.push(parse(f)?);
            }
        }
        return Ok(out);
    }
    match v {
        Value::Array(items) => items.iter().map(parse).collect(),
        _ => Ok(vec![parse(v)?]),
    }
}

fn rep(a: &RepArgs) -> Result<Outcome> {
    if a.modulus.eq_ignore_ascii_case("z") {
        return rep_over(IntMat::identity(a.n), a, None);
    }
    let m: u64 = a
        .modulus
        .parse()
        .map_err(|_| FiltraError::Parse(format!("modulus {:?} is neither Z nor a number", a.modulus)))?;
    let md = Modulus::from_value(m)?;
    rep_over(ModMat::identity(a.n, md), a, Some(md))
}

fn rep_over<M: SquareMatrix>(template: M, a: &RepArgs, md: Option<Modulus>) -> Result<Outcome> {
    let parse = |s: &Option<String>| -> Result<M> {
        match s {
            Some(s) => {
                let m = template.parse_like(s)?;
                if m.dim() != a.n {
                    return Err(FiltraError::DimensionMismatch { left: a.n, right: m.dim() });
                }
                Ok(m)
            }
            None => Ok(template.clone()),
        }
    };
    let u = DeltaElem::new(parse(&a.gamma)?, parse(&a.y)?)?;
    let rho = u.rho()?;
    let text = rho.to_string();
    let mut results = json!({
        "ring": template.ring_name(),
        "n": a.n,
        "element": u.to_string(),
        "matrix": text,
    });
    let mut summary: Vec<String> = text.split(';').map(str::to_string).collect();
    let mut passed = true;
    let mut timings = std::collections::BTreeMap::new();
    if a.verify {
        let seed = a.seed.ok_or_else(|| FiltraError::InvalidArgument("--verify needs --seed".into()))?;
        let t = Instant::now();
        let action = verify_action_samples(&template, a.count, 8, seed)?;
        let faithful = verify_faithful(&template, a.count, 8, seed)?;
        timings.insert("verify_ms".to_string(), ms(t));
        passed = action.passed && faithful.passed;
        summary.push(format!(
            "action: {} failures; homomorphism: {} failures; kernel probes: {} ({} failures); centre order {}",
            action.failures,
            faithful.homomorphism_failures,
            faithful.kernel_probes,
            faithful.kernel_failures,
            faithful.centre_order
        ));
        results["action"] = serde_json::to_value(action).expect("serializes");
        results["faithful"] = serde_json::to_value(faithful).expect("serializes");
        if let Some(md) = md.filter(|m| a.n == 2 && m.exponent() >= 2) {
            let ball = congruence_ball(md.prime(), 1, md.exponent(), 3)?;
            let emb = verify_embedding(&ball)?;
            passed &= emb.injective;
            summary.push(format!("embedding of {} elements: injective = {}", emb.elements, emb.injective));
            results["embedding"] = serde_json::to_value(emb).expect("serializes");
        }
    }
    Ok(Outcome { results, passed, summary, timings })
}

fn identities(a: &IdentitiesArgs) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut summary = Vec::new();
    let mut passed = true;
    if matches!(a.backend, BackendArg::Congruence | BackendArg::All) {
        let template = IntMat::identity(2);
        let act = ConjugationAction::new(MatrixGroup::new(template.clone(), false), MatrixGroup::new(template, true))?;
        let gens = congruence_generators(a.p, 1);
        let r = verify_identities(&act, &gens, &gens, a.count, a.radius, a.seed)?;
        passed &= r.passed();
        summary.push(format!("congruence: {} checks, {} failures", r.checks, r.failures.len()));
        results.insert("congruence".into(), serde_json::to_value(r).expect("serializes"));
    }
    if matches!(a.backend, BackendArg::Free | BackendArg::All) {
        let ext = poison_extension()?;
        let gamma_gens = ext.act.gamma().generators();
        let pi_gens = ext.act.pi().generators();
        let r = verify_identities(&ext.act, &gamma_gens, &pi_gens, a.count, a.radius, a.seed)?;
        passed &= r.passed();
        summary.push(format!("free: {} checks, {} failures", r.checks, r.failures.len()));
        results.insert("free".into(), serde_json::to_value(r).expect("serializes"));
    }
    Ok(Outcome { results: Value::Object(results), passed, summary, timings: Default::default() })
}

#[derive(Serialize)]
struct FixtureCheck {
    fixture: String,
    check: &'static str,
    holds: bool,
}

fn fixtures(a: &FixturesArgs) -> Result<Outcome> {
    if a.nmax < 2 {
        return Err(FiltraError::InvalidArgument("--nmax must be at least 2".into()));
    }
    let mut checks = Vec::new();
    let mut push =
        |fixture: String, check: &'static str, holds: bool| checks.push(FixtureCheck { fixture, check, holds });
    for n in 2..=a.nmax {
        let cov = CoveringAction::new(n)?;
        push(format!("x(n={n})"), "automorphism", verify_automorphism(&cov.x, &cov.x_inv));
        push(format!("y(n={n})"), "automorphism", verify_automorphism(&cov.y, &cov.y_inv));
        push(format!("y(n={n})"), "abelianization is identity", cov.y.abelianize().is_identity());
        for (i, j, e) in mccool_generators(n) {
            let name = format!("mccool(n={n}, i={i}, j={j})");
            push(name.clone(), "automorphism", verify_automorphism(&e, &mccool_inverse(n, i, j)?));
            push(name, "abelianization is identity", e.abelianize().is_identity());
        }
    }
    for i in 1..=2 {
        let e = poison_generator(i)?;
        push(format!("phi{i}"), "automorphism", verify_automorphism(&e, &poison_inverse(i)?));
        push(format!("phi{i}"), "abelianization is not identity", !e.abelianize().is_identity());
    }
    let failed = checks.iter().filter(|c| !c.holds).count();
    let line = format!("{} checks, {} failures", checks.len(), failed);
    Ok(Outcome::new(json!({ "checks": checks }), failed == 0).line(line))
}
