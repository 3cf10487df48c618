//! JSON/TOML manifests and their conversion to [`ManifoldSpec`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use gerst_core::builders::{FiberGenerator, ManifoldSpec, ModelKind, NamedTerm};
use gerst_core::character::{OracleMode, Rule, TrivialityOracle};
use gerst_core::{registry, Character, Error, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Violation};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawManifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// built-in example to start from; excludes the structural fields
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fiber: Vec<RawFiber>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<RawBracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<RawOracle>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, RawValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFiber {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RawCharacter>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCharacter {
    pub holo: Vec<RawScalar>,
    pub anti: Vec<RawScalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

/// `[gi, gj, [[gk, coef], ...]]`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawBracket(pub RawGen, pub RawGen, pub Vec<(RawGen, RawScalar)>);

/// A fiber generator by 0-based index or by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawGen {
    Index(usize),
    Name(String),
}

impl std::fmt::Display for RawGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RawGen::Index(i) => write!(f, "#{i}"),
            RawGen::Name(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOracle {
    pub mode: String,
    /// defaults to `e^{x_k}, e^{i y_k}` for `k = 1..n`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<RawCharacter>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trivial: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RawRule>,
}

/// `"never"`, `"always"` or a modulus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawRule {
    Modulo(u64),
    Word(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub word: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coef: Option<RawScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<RawCharacter>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Int(i64),
    Text(String),
    List(Vec<i64>),
}

impl RawValue {
    fn as_param(&self) -> String {
        match self {
            RawValue::Int(k) => k.to_string(),
            RawValue::Text(s) => s.clone(),
            RawValue::List(v) => v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Toml,
}

impl Format {
    pub fn guess(path: Option<&Path>, text: &str) -> Format {
        match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("toml") => Format::Toml,
            Some("json") => Format::Json,
            _ if text.trim_start().starts_with('{') => Format::Json,
            _ => Format::Toml,
        }
    }
}

pub fn parse_raw(text: &str, format: Format) -> Result<RawManifest, CliError> {
    let value: serde_json::Value = match format {
        Format::Json => serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(vec![Violation::new("syntax", "", e.to_string())]))?,
        Format::Toml => toml::from_str(text)
            .map_err(|e| CliError::Invalid(vec![Violation::new("syntax", "", e.to_string())]))?,
    };
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        CliError::Invalid(vec![Violation::new("schema", path, e.into_inner().to_string())])
    })
}

/// Parses and validates a manifest, reporting every violation found.
pub fn parse_manifest(text: &str, format: Format) -> Result<ManifoldSpec, CliError> {
    build_spec(&parse_raw(text, format)?)
}

pub fn load_manifest(path: &Path) -> Result<ManifoldSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_manifest(&text, Format::guess(Some(path), &text))
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, code: &str, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation::new(code, path, message));
    }

    fn scalar(&mut self, raw: &RawScalar, path: &str) -> Option<Scalar> {
        match raw {
            RawScalar::Int(k) => Some(Scalar::int(*k)),
            RawScalar::Text(s) => match s.parse() {
                Ok(x) => Some(x),
                Err(e) => {
                    self.push("scalar", path, format!("{e}"));
                    None
                }
            },
        }
    }

    fn character(&mut self, raw: &RawCharacter, n: usize, path: &str) -> Option<Character> {
        let mut ok = true;
        for (side, v) in [("holo", &raw.holo), ("anti", &raw.anti)] {
            if v.len() != n {
                self.push("dimension", format!("{path}.{side}"), format!("expected {n} entries, found {}", v.len()));
                ok = false;
            }
        }
        let holo: Vec<Option<Scalar>> =
            raw.holo.iter().enumerate().map(|(j, x)| self.scalar(x, &format!("{path}.holo[{j}]"))).collect();
        let anti: Vec<Option<Scalar>> =
            raw.anti.iter().enumerate().map(|(j, x)| self.scalar(x, &format!("{path}.anti[{j}]"))).collect();
        let holo: Option<Vec<Scalar>> = holo.into_iter().collect();
        let anti: Option<Vec<Scalar>> = anti.into_iter().collect();
        match (ok, holo, anti) {
            (true, Some(h), Some(a)) => Character::new(h, a).ok(),
            _ => None,
        }
    }

    fn term(&mut self, raw: &RawTerm, n: usize, path: &str) -> Option<NamedTerm> {
        if raw.word.is_empty() {
            self.push("term", format!("{path}.word"), "empty word");
        }
        let coef = match &raw.coef {
            None => Some(Scalar::one()),
            Some(c) => self.scalar(c, &format!("{path}.coef")),
        };
        let twist = match &raw.twist {
            None => Some(None),
            Some(t) => self.character(t, n, &format!("{path}.twist")).map(Some),
        };
        Some(NamedTerm { word: raw.word.clone(), twist: twist?, coef: coef? })
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_alphanumeric())
}

fn example_spec(raw: &RawManifest, key: &str) -> Result<ManifoldSpec, CliError> {
    let mut c = Collector(Vec::new());
    let structural = [
        ("kind", raw.kind.is_some()),
        ("n", raw.n.is_some()),
        ("fiber", !raw.fiber.is_empty()),
        ("brackets", !raw.brackets.is_empty()),
        ("oracle", raw.oracle.is_some()),
        ("omega", raw.omega.is_some()),
        ("mu", raw.mu.is_some()),
    ];
    for (field, present) in structural {
        if present {
            c.push("conflict", field, format!("{field} cannot be combined with example"));
        }
    }
    if !c.0.is_empty() {
        return Err(CliError::Invalid(c.0));
    }
    let params: BTreeMap<String, String> = raw.params.iter().map(|(k, v)| (k.clone(), v.as_param())).collect();
    let mut spec = registry::lookup(key, &params).map_err(|e| {
        CliError::Invalid(vec![Violation::new("example", "example", e.to_string())])
    })?;
    if let Some(name) = &raw.name {
        spec.name = name.clone();
    }
    Ok(spec)
}

pub fn build_spec(raw: &RawManifest) -> Result<ManifoldSpec, CliError> {
    if let Some(key) = &raw.example {
        return example_spec(raw, key);
    }
    let mut c = Collector(Vec::new());
    let kind = match &raw.kind {
        None => {
            c.push("missing-field", "kind", "kind is required");
            None
        }
        Some(k) => match k.parse::<ModelKind>() {
            Ok(k) => Some(k),
            Err(e) => {
                c.push("kind", "kind", e.to_string());
                None
            }
        },
    };
    let n = raw.n.unwrap_or_else(|| {
        c.push("missing-field", "n", "n is required");
        0
    });

    let mut seen = BTreeSet::new();
    for k in 0..n {
        seen.insert(format!("Z{}", k + 1));
    }
    let mut fiber = Vec::new();
    for (i, f) in raw.fiber.iter().enumerate() {
        let path = format!("fiber[{i}]");
        if !valid_name(&f.name) {
            c.push("name", format!("{path}.name"), format!("{:?} is not an uppercase alphanumeric name", f.name));
        } else if !seen.insert(f.name.clone()) {
            c.push("duplicate-name", format!("{path}.name"), format!("{} is already used", f.name));
        }
        let alpha = match &f.alpha {
            None => Some(Character::identity(n)),
            Some(a) => c.character(a, n, &format!("{path}.alpha")),
        };
        fiber.push(FiberGenerator { name: f.name.clone(), alpha: alpha.unwrap_or_else(|| Character::identity(n)) });
    }

    let index_of = |g: &RawGen| -> Option<usize> {
        match g {
            RawGen::Index(i) => (*i < raw.fiber.len()).then_some(*i),
            RawGen::Name(s) => raw.fiber.iter().position(|f| &f.name == s),
        }
    };
    let mut brackets = Vec::new();
    let mut pairs = BTreeSet::new();
    for (k, RawBracket(gi, gj, exp)) in raw.brackets.iter().enumerate() {
        let path = format!("brackets[{k}]");
        let i = index_of(gi);
        let j = index_of(gj);
        for (slot, g, r) in [(0, gi, i), (1, gj, j)] {
            if r.is_none() {
                c.push("unknown-generator", format!("{path}[{slot}]"), format!("no fiber generator {g}"));
            }
        }
        let mut expansion = Vec::new();
        for (l, (g, coef)) in exp.iter().enumerate() {
            match index_of(g) {
                Some(t) => {
                    if let Some(x) = c.scalar(coef, &format!("{path}[2][{l}][1]")) {
                        expansion.push((t, x));
                    }
                }
                None => c.push("unknown-generator", format!("{path}[2][{l}][0]"), format!("no fiber generator {g}")),
            }
        }
        if let (Some(i), Some(j)) = (i, j) {
            if i == j {
                c.push("bracket", &path, "a generator is bracketed with itself");
            } else if !pairs.insert((i.min(j), i.max(j))) {
                c.push("duplicate-bracket", &path, "pair already listed");
            } else {
                let aij = fiber[i].alpha.mul(&fiber[j].alpha).ok();
                for (t, x) in &expansion {
                    if !x.is_zero() && aij.as_ref() != Some(&fiber[*t].alpha) {
                        c.push(
                            "weight",
                            &path,
                            format!("[{}, {}] → {} is not preserved by the action", fiber[i].name, fiber[j].name, fiber[*t].name),
                        );
                    }
                }
                brackets.push((i, j, expansion));
            }
        }
    }

    let oracle = match &raw.oracle {
        None => registry::xy_oracle(n, Vec::new()).ok(),
        Some(o) => {
            let generators = match &o.generators {
                None => registry::xy_oracle(n, Vec::new()).ok().map(|x| x.generators().to_vec()),
                Some(gs) => gs
                    .iter()
                    .enumerate()
                    .map(|(k, g)| c.character(g, n, &format!("oracle.generators[{k}]")))
                    .collect(),
            };
            let mode = match o.mode.as_str() {
                "sublattice" => {
                    if !o.rules.is_empty() {
                        c.push("oracle", "oracle.rules", "rules belong to mode \"rules\"");
                    }
                    Some(OracleMode::Sublattice { trivial: o.trivial.clone() })
                }
                "rules" => {
                    if !o.trivial.is_empty() {
                        c.push("oracle", "oracle.trivial", "trivial vectors belong to mode \"sublattice\"");
                    }
                    let mut rules = Vec::new();
                    for (k, r) in o.rules.iter().enumerate() {
                        match r {
                            RawRule::Modulo(m) => rules.push(Rule::Modulo(*m)),
                            RawRule::Word(w) if w == "never" => rules.push(Rule::Never),
                            RawRule::Word(w) if w == "always" => rules.push(Rule::Always),
                            RawRule::Word(w) => c.push("oracle", format!("oracle.rules[{k}]"), format!("unknown rule {w:?}")),
                        }
                    }
                    Some(OracleMode::RuleTable { rules })
                }
                m => {
                    c.push("oracle", "oracle.mode", format!("unknown mode {m:?}"));
                    None
                }
            };
            match (generators, mode) {
                (Some(g), Some(m)) => match TrivialityOracle::new(g, m) {
                    Ok(o) => Some(o),
                    Err(e) => {
                        c.push("oracle", "oracle", e.to_string());
                        None
                    }
                },
                _ => None,
            }
        }
    };

    let mut terms = |list: &Option<Vec<RawTerm>>, field: &str| -> Option<Vec<NamedTerm>> {
        list.as_ref().map(|ts| {
            ts.iter().enumerate().filter_map(|(k, t)| c.term(t, n, &format!("{field}[{k}]"))).collect()
        })
    };
    let omega = terms(&raw.omega, "omega");
    let mu = terms(&raw.mu, "mu");

    if let Some(kind) = kind {
        if matches!(kind, ModelKind::Splitting | ModelKind::SymplecticSplitting) {
            let top = fiber.iter().try_fold(Character::identity(n), |acc, f| acc.mul(&f.alpha));
            if let Ok(top) = top {
                if !top.is_identity() {
                    c.push("unimodular", "fiber", format!("product of all fiber characters is {top}, not 1"));
                }
            }
        }
        if kind != ModelKind::Nilmanifold {
            if let Some(o) = &oracle {
                for (i, f) in fiber.iter().enumerate() {
                    if f.alpha.dim() == n && o.exponents(&f.alpha.unitary_part()).is_err() {
                        c.push(
                            "oracle-closure",
                            format!("fiber[{i}].alpha"),
                            format!("unitary part of the character of {} is outside the oracle's span", f.name),
                        );
                    }
                }
            }
        }
    }

    if !c.0.is_empty() {
        return Err(CliError::Invalid(c.0));
    }
    let spec = ManifoldSpec {
        name: raw.name.clone().unwrap_or_else(|| "manifest".into()),
        kind: kind.expect("checked"),
        n,
        fiber,
        brackets,
        oracle: oracle.expect("checked"),
        assumptions: raw.assumptions.clone(),
        omega,
        mu,
        params: raw.params.iter().map(|(k, v)| (k.clone(), v.as_param())).collect(),
    };
    spec.validate().map_err(|e| CliError::Invalid(vec![core_violation(&e)]))?;
    Ok(spec)
}

fn core_violation(e: &Error) -> Violation {
    let (code, path) = match e {
        Error::Jacobi(..) | Error::MissingBracket(..) => ("jacobi", "brackets"),
        Error::Dimension { .. } => ("dimension", ""),
        Error::Index { .. } => ("index", "brackets"),
        Error::Oracle(_) | Error::Unresolvable(_) => ("oracle", "oracle"),
        Error::Assumption(_) => ("assumption", "fiber"),
        Error::Unsupported(_) => ("unsupported", "kind"),
        _ => ("invalid", ""),
    };
    Violation::new(code, path, e.to_string())
}

fn raw_char(c: &Character) -> RawCharacter {
    let f = |v: &[Scalar]| v.iter().map(|x| RawScalar::Text(x.to_string())).collect();
    RawCharacter { holo: f(&c.holo), anti: f(&c.anti) }
}

fn raw_terms(ts: &[NamedTerm]) -> Vec<RawTerm> {
    ts.iter()
        .map(|t| RawTerm {
            word: t.word.clone(),
            coef: Some(RawScalar::Text(t.coef.to_string())),
            twist: t.twist.as_ref().map(raw_char),
        })
        .collect()
}

/// The manifest describing `spec` in full (no `example` shortcut).
pub fn to_manifest(spec: &ManifoldSpec) -> RawManifest {
    let oracle = {
        let o = &spec.oracle;
        let generators = Some(o.generators().iter().map(raw_char).collect());
        match o.mode() {
            OracleMode::Sublattice { trivial } => {
                RawOracle { mode: "sublattice".into(), generators, trivial: trivial.clone(), rules: Vec::new() }
            }
            OracleMode::RuleTable { rules } => RawOracle {
                mode: "rules".into(),
                generators,
                trivial: Vec::new(),
                rules: rules
                    .iter()
                    .map(|r| match r {
                        Rule::Never => RawRule::Word("never".into()),
                        Rule::Always => RawRule::Word("always".into()),
                        Rule::Modulo(k) => RawRule::Modulo(*k),
                    })
                    .collect(),
            },
        }
    };
    let name = |i: usize| RawGen::Name(spec.fiber[i].name.clone());
    RawManifest {
        name: Some(spec.name.clone()),
        example: None,
        kind: Some(spec.kind.as_str().into()),
        n: Some(spec.n),
        fiber: spec.fiber.iter().map(|f| RawFiber { name: f.name.clone(), alpha: Some(raw_char(&f.alpha)) }).collect(),
        brackets: spec
            .brackets
            .iter()
            .map(|(i, j, e)| {
                RawBracket(name(*i), name(*j), e.iter().map(|(k, c)| (name(*k), RawScalar::Text(c.to_string()))).collect())
            })
            .collect(),
        oracle: Some(oracle),
        assumptions: spec.assumptions.clone(),
        omega: spec.omega.as_deref().map(raw_terms),
        mu: spec.mu.as_deref().map(raw_terms),
        params: spec.params.iter().map(|(k, v)| (k.clone(), RawValue::Text(v.clone()))).collect(),
    }
}
