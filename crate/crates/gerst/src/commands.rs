//! Command dispatch. Every command yields a JSON value; text output is rendered from it.

use std::path::PathBuf;

use gerst_core::builders::*;
use gerst_core::cohomology::{cohomology, dolbeault_table, CochainComplex, DegreeCohomology};
use gerst_core::hodge::HodgePackage;
use gerst_core::kuranishi::{kuranishi_expand, nilpotency_certificate, restrict_classical, DEFAULT_MAX_ORDER};
use gerst_core::mirror::{mirror_compare, smss_hypothesis, MirrorPath};
use gerst_core::poisson::{named_element, operator_is_zero, poisson_cohomology, verify_poisson};
use gerst_core::{Error, FiniteDGA};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::examples::Examples;
use crate::manifest::{load_manifest, to_manifest};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Cohomology,
    Kuranishi,
    Poisson,
    Mirror,
    ListExamples,
    ShowExample,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::Kuranishi => "kuranishi",
            Command::Poisson => "poisson",
            Command::Mirror => "mirror",
            Command::ListExamples => "list-examples",
            Command::ShowExample => "show-example",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    None,
    Example(String),
    Manifest(PathBuf),
}

/// Which bivector `poisson` uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuSource {
    Builtin,
    Zero,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Input,
    pub max_order: usize,
    pub mu: MuSource,
}

impl RunConfig {
    pub fn new(command: Command, input: Input) -> Self {
        RunConfig { command, input, max_order: DEFAULT_MAX_ORDER, mu: MuSource::Builtin }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// the computation ran and said no
    Rejected,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Rejected => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: Command,
    pub status: Status,
    pub value: Value,
}

fn ok(command: Command, value: Value) -> Outcome {
    Outcome { command, status: Status::Ok, value }
}

/// The polyvector model used for cohomology, Kuranishi and Poisson.
pub fn complex_model(spec: &ManifoldSpec) -> Result<FiniteDGA, Error> {
    match spec.kind {
        ModelKind::Nilmanifold => build_nilmanifold_model(spec),
        ModelKind::Splitting | ModelKind::SymplecticSplitting => build_splitting_c(spec),
        ModelKind::Parallelizable => Ok(build_parallelizable_models(spec)?.1),
    }
}

fn spec_for(cfg: &RunConfig, examples: &Examples) -> Result<ManifoldSpec, CliError> {
    match &cfg.input {
        Input::Example(k) => examples.resolve(k),
        Input::Manifest(p) => load_manifest(p),
        Input::None => Err(CliError::Usage(format!("{} needs an example key or --manifest", cfg.command.as_str()))),
    }
}

pub fn run(cfg: &RunConfig, examples: &Examples) -> Result<Outcome, CliError> {
    let c = cfg.command;
    match c {
        Command::ListExamples => {
            if cfg.input != Input::None {
                return Err(CliError::Usage("list-examples takes no input".into()));
            }
            Ok(ok(c, json!({ "examples": examples.list() })))
        }
        Command::ShowExample => {
            let spec = spec_for(cfg, examples)?;
            Ok(ok(c, serde_json::to_value(to_manifest(&spec)).expect("manifest serializes")))
        }
        Command::Validate => validate(&spec_for(cfg, examples)?).map(|v| ok(c, v)),
        Command::Cohomology => cohomology_report(&spec_for(cfg, examples)?).map(|v| ok(c, v)),
        Command::Kuranishi => kuranishi_report(&spec_for(cfg, examples)?, cfg.max_order).map(|v| ok(c, v)),
        Command::Poisson => poisson_report(&spec_for(cfg, examples)?, &cfg.mu),
        Command::Mirror => mirror_report(&spec_for(cfg, examples)?),
    }
}

fn report(r: &ConditionReport) -> Value {
    json!({
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|(j, l)| json!({ "J": j, "L": l })),
        "checked": r.checked,
    })
}

fn validate(spec: &ManifoldSpec) -> Result<Value, CliError> {
    let mut checks = Map::new();
    match spec.kind {
        ModelKind::Nilmanifold => {}
        ModelKind::Splitting | ModelKind::SymplecticSplitting => {
            checks.insert("condition_d2".into(), report(&check_condition_d(2, spec)?));
            checks.insert("condition_b".into(), report(&check_condition_b(spec)?));
            if spec.kind == ModelKind::SymplecticSplitting {
                checks.insert("mirror_hypothesis".into(), report(&smss_hypothesis(spec)?));
            }
        }
        ModelKind::Parallelizable => {
            checks.insert("condition_e2".into(), report(&check_condition_e(2, spec)?));
        }
    }
    let m = complex_model(spec)?;
    Ok(json!({
        "name": spec.name,
        "kind": spec.kind.as_str(),
        "n": spec.n,
        "fiber": spec.fiber.iter().map(|f| json!({ "name": f.name, "alpha": f.alpha.to_string() })).collect::<Vec<_>>(),
        "nilpotency_certificate": nilpotency_certificate(spec)?,
        "checks": checks,
        "model": { "label": m.label, "dim": m.dim(), "degree_dims": m.degree_dims() },
    }))
}

fn cell(m: &FiniteDGA, d: &DegreeCohomology) -> Value {
    json!({
        "dim": d.dim,
        "representatives": d.representatives.iter().map(|v| m.fmt_vector(v)).collect::<Vec<_>>(),
    })
}

fn degree_table(m: &FiniteDGA, degrees: &[DegreeCohomology]) -> Value {
    Value::Object(degrees.iter().enumerate().map(|(k, d)| (k.to_string(), cell(m, d))).collect())
}

fn cohomology_report(spec: &ManifoldSpec) -> Result<Value, CliError> {
    let m = complex_model(spec)?;
    let bigraded: Map<String, Value> =
        dolbeault_table(&m)?.iter().map(|((p, q), d)| (format!("({p},{q})"), cell(&m, d))).collect();
    let total = cohomology(&CochainComplex::from_model(&m)?)?;
    let mut out = json!({
        "name": spec.name,
        "model": m.label,
        "bigraded": bigraded,
        "total": degree_table(&m, &total.degrees),
        "dims": total.dims(),
        "euler_characteristic": total.euler_characteristic(),
    });
    if spec.kind == ModelKind::Nilmanifold {
        let dr = build_de_rham_model(spec)?;
        let t = cohomology(&CochainComplex::from_model(&dr)?)?;
        out["de_rham"] = json!({ "model": dr.label, "dims": t.dims(), "table": degree_table(&dr, &t.degrees) });
    }
    Ok(out)
}

fn kuranishi_report(spec: &ManifoldSpec, max_order: usize) -> Result<Value, CliError> {
    let m = complex_model(spec)?;
    let pkg = HodgePackage::new(&m)?;
    let r = kuranishi_expand(&pkg, nilpotency_certificate(spec)?, max_order)?;
    let aliases = r.aliases();
    let mut phi = Vec::new();
    for (k, order) in r.orders.iter().enumerate() {
        for (mono, v) in &order.terms {
            if !v.is_empty() {
                phi.push(json!({ "order": k + 1, "monomial": mono.format(&aliases), "vector": m.fmt_vector(v) }));
            }
        }
    }
    let classical = restrict_classical(&r);
    Ok(json!({
        "name": spec.name,
        "model": m.label,
        "parameters": r.params.iter().map(|p| json!({
            "name": p.name,
            "alias": p.alias,
            "bigrade": [p.bigrade.0, p.bigrade.1],
        })).collect::<Vec<_>>(),
        "phi": phi,
        "obstructions": r.obstruction_strings(true),
        "classical_obstructions": classical.obstruction_strings(true),
        "cutoff": r.cutoff.as_str(),
        "truncated": r.truncated,
        "smooth": r.smooth,
    }))
}

fn poisson_report(spec: &ManifoldSpec, mu: &MuSource) -> Result<Outcome, CliError> {
    let m = complex_model(spec)?;
    let element = match mu {
        MuSource::Zero => gerst_core::exterior::Element::zero(),
        MuSource::Builtin => {
            let terms = spec
                .mu
                .as_ref()
                .ok_or_else(|| CliError::Usage(format!("{} declares no mu", spec.name)))?;
            named_element(m.universe(), terms)?
        }
    };
    let mu_text = m.universe().fmt_element(&element);
    let ps = match verify_poisson(&m, &element) {
        Ok(ps) => ps,
        Err(Error::NotPoisson { condition, residual }) => {
            return Ok(Outcome {
                command: Command::Poisson,
                status: Status::Rejected,
                value: json!({
                    "name": spec.name,
                    "mu": mu_text,
                    "accepted": false,
                    "condition": condition,
                    "residual": m.universe().fmt_element(&residual),
                }),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let t = poisson_cohomology(&m, &ps)?;
    Ok(ok(
        Command::Poisson,
        json!({
            "name": spec.name,
            "model": m.label,
            "mu": mu_text,
            "accepted": true,
            "operator_zero": operator_is_zero(&ps),
            "dims": t.dims(),
            "table": degree_table(&m, &t.degrees),
            "euler_characteristic": t.euler_characteristic(),
        }),
    ))
}

fn mirror_report(spec: &ManifoldSpec) -> Result<Outcome, CliError> {
    let r = mirror_compare(spec)?;
    let value = json!({
        "name": spec.name,
        "matched": r.matched,
        "witness": r.witness,
        "quadruple": r.quadruple,
        "path": match r.path { MirrorPath::Full => "full", MirrorPath::Structural => "structural" },
        "quadruples_checked": r.quadruples_checked,
        "dims_left": r.dims_left,
        "dims_right": r.dims_right,
        "map": r.map.iter().map(|(a, c)| json!([a, c])).collect::<Vec<_>>(),
    });
    let status = if r.matched { Status::Ok } else { Status::Rejected };
    Ok(Outcome { command: Command::Mirror, status, value })
}
