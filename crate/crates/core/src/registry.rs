//! Built-in example families.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::builders::{FiberGenerator, ManifoldSpec, ModelKind, NamedTerm};
use crate::character::{Character, OracleMode, TrivialityOracle};
use crate::error::Error;
use crate::scalar::Scalar;

pub const KEYS: &[&str] = &[
    "heisenberg-c",
    "iwasawa",
    "cxn1n2-k1-k2",
    "nakamura-generic",
    "nakamura-pi",
    "nak-family",
    "tyy-family",
    "nak-poisson",
    "torus-1",
    "torus-2",
    "torus-3",
];

pub fn describe(key: &str) -> &'static str {
    match key {
        "heisenberg-c" => "complex Heisenberg group times C, nilmanifold",
        "iwasawa" => "Iwasawa manifold",
        "cxn1n2-k1-k2" => "C acting on a product of two Heisenberg groups with weights e^{±k x}, splitting type",
        "nakamura-generic" => "Nakamura manifold with a generic lattice",
        "nakamura-pi" => "Nakamura manifold with the lattice in the pi case",
        "nak-family" => "pseudo-Kahler family C acting on C^{2d} by e^{±a_i x}",
        "tyy-family" => "pseudo-Kahler family C^n acting on C^{2n+2}",
        "nak-poisson" => "C times the nak group with a holomorphic symplectic bivector",
        k if k.starts_with("torus-") => "complex torus",
        _ => "",
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

fn unit(n: usize, k: usize, c: i64) -> Vec<Scalar> {
    let mut v = alloc::vec![Scalar::zero(); n];
    v[k] = Scalar::int(c);
    v
}

fn term(names: &[&str], coef: Scalar) -> NamedTerm {
    NamedTerm { word: names.iter().map(|s| s.to_string()).collect(), twist: None, coef }
}

fn fiber(name: impl Into<String>, alpha: Character) -> FiberGenerator {
    FiberGenerator { name: name.into(), alpha }
}

fn base(name: &str, kind: ModelKind, n: usize) -> ManifoldSpec {
    ManifoldSpec {
        name: name.to_string(),
        kind,
        n,
        fiber: Vec::new(),
        brackets: Vec::new(),
        oracle: TrivialityOracle::empty(),
        assumptions: Vec::new(),
        omega: None,
        mu: None,
        params: BTreeMap::new(),
    }
}

/// Oracle over `e^{x_k}, e^{i y_k}` where only the listed exponent vectors are trivial.
pub fn xy_oracle(n: usize, trivial: Vec<Vec<i64>>) -> Result<TrivialityOracle, Error> {
    let mut gens = Vec::new();
    for k in 0..n {
        gens.push(Character::exp_x(&unit(n, k, 1)));
    }
    for k in 0..n {
        gens.push(Character::exp_iy(&unit(n, k, 1)));
    }
    TrivialityOracle::new(gens, OracleMode::Sublattice { trivial })
}

pub fn torus(n: usize) -> ManifoldSpec {
    let mut s = base(&alloc::format!("torus-{n}"), ModelKind::Nilmanifold, n);
    s.assumptions.push("N".into());
    s.params.insert("n".into(), n.to_string());
    s
}

pub fn iwasawa() -> ManifoldSpec {
    let mut s = base("iwasawa", ModelKind::Nilmanifold, 0);
    for name in ["X", "Y", "Z"] {
        s.fiber.push(fiber(name, Character::identity(0)));
    }
    s.brackets.push((0, 1, alloc::vec![(2, Scalar::one())]));
    s.assumptions.push("C".into());
    s
}

pub fn heisenberg_c() -> ManifoldSpec {
    let mut s = base("heisenberg-c", ModelKind::Nilmanifold, 0);
    for name in ["X", "Y", "Z", "W"] {
        s.fiber.push(fiber(name, Character::identity(0)));
    }
    s.brackets.push((0, 1, alloc::vec![(2, Scalar::one())]));
    s.assumptions.push("C".into());
    s.mu = Some(alloc::vec![term(&["X", "Z"], Scalar::one()), term(&["Y", "W"], Scalar::one())]);
    s
}

/// `ℂ ⋉ (N₁ × N₂)` with weights `e^{±k₁x}, e^{±k₂x}, e^{±(k₁+k₂)x}`; the lattice
/// parameter is irrational modulo π so only the zero exponent of `e^{iy}` is trivial.
pub fn cxn1n2(k1: i64, k2: i64) -> Result<ManifoldSpec, Error> {
    let mut s = base("cxn1n2", ModelKind::Splitting, 1);
    let ks = [k1, k2, k1 + k2];
    for (i, sign) in [(1, 1), (2, -1)] {
        for (j, k) in ks.iter().enumerate() {
            s.fiber.push(fiber(alloc::format!("Y{i}{}", j + 1), Character::exp_x(&ints(&[sign * k]))));
        }
    }
    s.brackets.push((0, 1, alloc::vec![(2, Scalar::one())]));
    s.brackets.push((3, 4, alloc::vec![(5, Scalar::one())]));
    s.oracle = TrivialityOracle::new(
        alloc::vec![Character::exp_iy(&ints(&[1]))],
        OracleMode::Sublattice { trivial: Vec::new() },
    )?;
    s.assumptions.push("splitting".into());
    s.params.insert("k1".into(), k1.to_string());
    s.params.insert("k2".into(), k2.to_string());
    Ok(s)
}

/// Nakamura manifold `ℂ ⋉ ℂ²` with `diag(e^z, e^{-z})`. In the π case `e^{2iy}` is trivial.
pub fn nakamura(pi_case: bool) -> Result<ManifoldSpec, Error> {
    let name = if pi_case { "nakamura-pi" } else { "nakamura-generic" };
    let mut s = base(name, ModelKind::Parallelizable, 1);
    s.fiber.push(fiber("Z2", Character::exp_z(&ints(&[1]))));
    s.fiber.push(fiber("Z3", Character::exp_z(&ints(&[-1]))));
    let trivial = if pi_case { alloc::vec![alloc::vec![0, 2]] } else { Vec::new() };
    s.oracle = xy_oracle(1, trivial)?;
    s.mu = Some(alloc::vec![NamedTerm {
        word: alloc::vec!["Z1".into(), "Z2".into()],
        twist: Some(Character::exp_z(&ints(&[1]))),
        coef: Scalar::one(),
    }]);
    Ok(s)
}

fn pseudo_kahler(name: &str, n: usize, alphas: &[Character], oracle: TrivialityOracle) -> ManifoldSpec {
    let mut s = base(name, ModelKind::SymplecticSplitting, n);
    for (i, a) in alphas.iter().enumerate() {
        s.fiber.push(fiber(alloc::format!("W1{}", i + 1), a.clone()));
    }
    for (i, a) in alphas.iter().enumerate() {
        s.fiber.push(fiber(alloc::format!("W2{}", i + 1), a.inv()));
    }
    let mut omega = Vec::new();
    for k in 1..=n {
        omega.push(term(&[&alloc::format!("dz{k}"), &alloc::format!("dz{k}b")], Scalar::i()));
    }
    for i in 1..=alphas.len() {
        omega.push(term(&[&alloc::format!("dw1{i}"), &alloc::format!("dw2{i}b")], Scalar::one()));
        omega.push(term(&[&alloc::format!("dw1{i}b"), &alloc::format!("dw2{i}")], Scalar::one()));
    }
    s.omega = Some(omega);
    s.oracle = oracle;
    s.assumptions.push("pseudo-kahler".into());
    s
}

/// `ℂ ⋉ ℂ^{2d}` with weights `e^{±a_i x}`; the lattice parameter is irrational modulo π.
pub fn nak(a: &[i64]) -> Result<ManifoldSpec, Error> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::Input("nak weights must be nonzero".into()));
    }
    let alphas: Vec<Character> = a.iter().map(|&k| Character::exp_x(&ints(&[k]))).collect();
    let mut s = pseudo_kahler("nak-family", 1, &alphas, xy_oracle(1, Vec::new())?);
    s.params.insert("a".into(), a.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
    Ok(s)
}

/// `ℂⁿ` with `ω = i Σ dz∧dz̄`, the symplectic side of a complex torus.
pub fn kahler_torus(n: usize) -> Result<ManifoldSpec, Error> {
    let mut s = pseudo_kahler(&alloc::format!("torus-{n}"), n, &[], xy_oracle(n, Vec::new())?);
    s.params.insert("n".into(), n.to_string());
    Ok(s)
}

/// `ℂ × G` for the `nak` group `G`, with the holomorphic symplectic bivector
/// `Z1∧Z2 + Σ W1i∧W2i`.
pub fn nak_poisson(a: &[i64]) -> Result<ManifoldSpec, Error> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::Input("nak weights must be nonzero".into()));
    }
    let mut s = base("nak-poisson", ModelKind::Splitting, 2);
    let d = a.len();
    for (i, &k) in a.iter().enumerate() {
        s.fiber.push(fiber(alloc::format!("W1{}", i + 1), Character::exp_x(&ints(&[0, k]))));
    }
    for (i, &k) in a.iter().enumerate() {
        s.fiber.push(fiber(alloc::format!("W2{}", i + 1), Character::exp_x(&ints(&[0, -k]))));
    }
    s.oracle = xy_oracle(2, Vec::new())?;
    let mut mu = alloc::vec![term(&["Z1", "Z2"], Scalar::one())];
    for i in 1..=d {
        mu.push(term(&[&alloc::format!("W1{i}"), &alloc::format!("W2{i}")], Scalar::one()));
    }
    s.mu = Some(mu);
    s.params.insert("a".into(), a.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
    Ok(s)
}

/// `ℂⁿ ⋉ ℂ^{2n+2}` with `e^{x_k}` and `e^{-Σx}`; the imaginary lattice is `iℤⁿ`.
pub fn tyy(n: usize) -> Result<ManifoldSpec, Error> {
    if n == 0 || n > 3 {
        return Err(Error::Input(alloc::format!("tyy needs 1 <= n <= 3, got {n}")));
    }
    let mut alphas: Vec<Character> = (0..n).map(|k| Character::exp_x(&unit(n, k, 1))).collect();
    alphas.push(Character::exp_x(&alloc::vec![Scalar::int(-1); n]));
    let mut s = pseudo_kahler("tyy-family", n, &alphas, xy_oracle(n, Vec::new())?);
    s.params.insert("n".into(), n.to_string());
    Ok(s)
}

fn param<T: core::str::FromStr>(params: &BTreeMap<String, String>, key: &str, default: T) -> Result<T, Error> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| Error::Input(alloc::format!("bad parameter {key}={v}"))),
    }
}

fn list_param(params: &BTreeMap<String, String>, key: &str, default: &str) -> Result<Vec<i64>, Error> {
    let text = params.get(key).map(String::as_str).unwrap_or(default);
    text.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Input(alloc::format!("bad parameter {key}={text}")))
}

/// Looks up `key`, applying any `params` the family understands.
pub fn lookup(key: &str, params: &BTreeMap<String, String>) -> Result<ManifoldSpec, Error> {
    let accepted: &[&str] = match key {
        "cxn1n2-k1-k2" => &["k1", "k2"],
        "nak-family" | "nak-poisson" => &["a"],
        "tyy-family" => &["n"],
        _ => &[],
    };
    if let Some(p) = params.keys().find(|p| !accepted.contains(&p.as_str())) {
        return Err(Error::Input(alloc::format!("{key} has no parameter {p}")));
    }
    let mut spec = match key {
        "heisenberg-c" => heisenberg_c(),
        "iwasawa" => iwasawa(),
        "cxn1n2-k1-k2" => cxn1n2(param(params, "k1", 1)?, param(params, "k2", 2)?)?,
        "nakamura-generic" => nakamura(false)?,
        "nakamura-pi" => nakamura(true)?,
        "nak-family" => nak(&list_param(params, "a", "1,2")?)?,
        "tyy-family" => tyy(param(params, "n", 1)?)?,
        "nak-poisson" => nak_poisson(&list_param(params, "a", "1")?)?,
        k if k.starts_with("torus-") => {
            let n: usize = k[6..].parse().map_err(|_| Error::Input(alloc::format!("unknown example {k}")))?;
            torus(n)
        }
        k if k.starts_with("cxn1n2-") => {
            let mut it = k[7..].split('-');
            let k1 = it.next().and_then(|x| x.parse().ok());
            let k2 = it.next().and_then(|x| x.parse().ok());
            match (k1, k2, it.next()) {
                (Some(a), Some(b), None) => cxn1n2(a, b)?,
                _ => return Err(Error::Input(alloc::format!("unknown example {k}"))),
            }
        }
        _ => return Err(Error::Input(alloc::format!("unknown example {key}"))),
    };
    spec.name = key.to_string();
    Ok(spec)
}
