//! Plain-text rendering of command results. JSON is the contract; this is for reading.

use serde_json::Value;

use crate::commands::{Command, Outcome};
use crate::error::CliError;

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(cols) {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(width[i] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn list(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().map(s).collect()).unwrap_or_default()
}

fn cells(t: &Value) -> Vec<Vec<String>> {
    t.as_object()
        .map(|o| {
            o.iter()
                .map(|(k, c)| vec![k.clone(), s(&c["dim"]), list(&c["representatives"]).join(", ")])
                .collect()
        })
        .unwrap_or_default()
}

fn numeric_keys(mut rows: Vec<Vec<String>>) -> Vec<Vec<String>> {
    rows.sort_by_key(|r| r[0].parse::<usize>().unwrap_or(usize::MAX));
    rows
}

pub fn text(o: &Outcome) -> String {
    let v = &o.value;
    match o.command {
        Command::ListExamples => {
            let rows: Vec<Vec<String>> = v["examples"]
                .as_array()
                .map(|a| a.iter().map(|e| vec![s(&e["key"]), s(&e["source"]), s(&e["description"])]).collect())
                .unwrap_or_default();
            table(&["key", "source", "description"], &rows)
        }
        Command::ShowExample => {
            let mut t = toml::to_string(v).unwrap_or_else(|_| json(v));
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Command::Validate => {
            let mut out = format!("{} ({}, n = {})\n", s(&v["name"]), s(&v["kind"]), s(&v["n"]));
            let fiber: Vec<Vec<String>> = v["fiber"]
                .as_array()
                .map(|a| a.iter().map(|f| vec![s(&f["name"]), s(&f["alpha"])]).collect())
                .unwrap_or_default();
            out += &table(&["generator", "character"], &fiber);
            if let Some(checks) = v["checks"].as_object() {
                for (k, c) in checks {
                    out += &format!("{k}: {}", if c["holds"] == Value::Bool(true) { "holds" } else { "fails" });
                    if !c["witness"].is_null() {
                        out += &format!(" at J = {}, L = {}", c["witness"]["J"], c["witness"]["L"]);
                    }
                    out += "\n";
                }
            }
            out += &format!("nilpotency certificate: {}\n", s(&v["nilpotency_certificate"]));
            out += &format!("model {}: {} words, degrees {}\n", s(&v["model"]["label"]), s(&v["model"]["dim"]), v["model"]["degree_dims"]);
            out
        }
        Command::Cohomology => {
            let mut out = format!("{} ({})\n", s(&v["name"]), s(&v["model"]));
            out += &table(&["(p,q)", "dim", "representatives"], &cells(&v["bigraded"]));
            out += "\n";
            out += &table(&["degree", "dim", "representatives"], &numeric_keys(cells(&v["total"])));
            out += &format!("euler characteristic {}\n", s(&v["euler_characteristic"]));
            if !v["de_rham"].is_null() {
                out += &format!("\nde Rham ({})\n", s(&v["de_rham"]["model"]));
                let rows: Vec<Vec<String>> =
                    list(&v["de_rham"]["dims"]).into_iter().enumerate().map(|(k, d)| vec![k.to_string(), d]).collect();
                out += &table(&["degree", "betti"], &rows);
            }
            out
        }
        Command::Kuranishi => {
            let mut out = format!("{} ({})\n", s(&v["name"]), s(&v["model"]));
            let params: Vec<Vec<String>> = v["parameters"]
                .as_array()
                .map(|a| a.iter().map(|p| vec![s(&p["alias"]), s(&p["name"]), p["bigrade"].to_string()]).collect())
                .unwrap_or_default();
            out += &table(&["alias", "class", "bigrade"], &params);
            out += "\n";
            let phi: Vec<Vec<String>> = v["phi"]
                .as_array()
                .map(|a| a.iter().map(|t| vec![s(&t["order"]), s(&t["monomial"]), s(&t["vector"])]).collect())
                .unwrap_or_default();
            out += &table(&["order", "monomial", "vector"], &phi);
            out += &format!("\ncutoff: {}  truncated: {}  smooth: {}\n", s(&v["cutoff"]), s(&v["truncated"]), s(&v["smooth"]));
            out += "obstructions:\n";
            for p in list(&v["obstructions"]) {
                out += &format!("  {p} = 0\n");
            }
            out += "classical obstructions:\n";
            for p in list(&v["classical_obstructions"]) {
                out += &format!("  {p} = 0\n");
            }
            out
        }
        Command::Poisson => {
            let mut out = format!("{}  mu = {}\n", s(&v["name"]), s(&v["mu"]));
            if v["accepted"] == Value::Bool(false) {
                out += &format!("rejected: {} residual {}\n", s(&v["condition"]), s(&v["residual"]));
                return out;
            }
            out += &table(&["degree", "dim", "representatives"], &numeric_keys(cells(&v["table"])));
            out += &format!("euler characteristic {}\n", s(&v["euler_characteristic"]));
            out
        }
        Command::Mirror => {
            let mut out = format!("{}: matched = {} ({} path, {} quadruples)\n", s(&v["name"]), s(&v["matched"]), s(&v["path"]), s(&v["quadruples_checked"]));
            if !v["witness"].is_null() {
                out += &format!("witness: {}\n", s(&v["witness"]));
            }
            let l = list(&v["dims_left"]);
            let r = list(&v["dims_right"]);
            let rows: Vec<Vec<String>> = l
                .iter()
                .zip(&r)
                .enumerate()
                .map(|(k, (a, b))| vec![k.to_string(), a.clone(), b.clone()])
                .collect();
            out += &table(&["degree", "complex", "symplectic"], &rows);
            let pairs: Vec<Vec<String>> = v["map"]
                .as_array()
                .map(|a| a.iter().map(|p| vec![s(&p[0]), s(&p[1])]).collect())
                .unwrap_or_default();
            if !pairs.is_empty() {
                out += "\n";
                out += &table(&["symplectic", "complex"], &pairs);
            }
            out
        }
    }
}

pub fn error_json(e: &CliError) -> Value {
    serde_json::json!({
        "error": {
            "code": e.code(),
            "message": e.to_string(),
            "violations": e.violations(),
        }
    })
}

pub fn error_text(e: &CliError) -> String {
    let mut out = format!("error [{}]: {e}\n", e.code());
    for v in e.violations() {
        let at = if v.path.is_empty() { "<root>" } else { v.path.as_str() };
        out += &format!("  {}: {} ({})\n", at, v.message, v.code);
    }
    out
}
