//! Built-in examples plus user packs from `GERST_EXAMPLES_DIR`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gerst_core::builders::ManifoldSpec;
use gerst_core::registry;

use crate::error::CliError;
use crate::manifest::load_manifest;

pub const ENV_VAR: &str = "GERST_EXAMPLES_DIR";

#[derive(Clone, Debug, Default)]
pub struct Examples {
    /// user manifests by key (file stem)
    user: BTreeMap<String, PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExampleInfo {
    pub key: String,
    pub description: String,
    pub source: String,
}

impl Examples {
    pub fn builtin() -> Self {
        Examples::default()
    }

    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Examples::with_dir(Path::new(&dir)),
            _ => Ok(Examples::builtin()),
        }
    }

    /// Every `*.json` and `*.toml` file in `dir` becomes a key.
    pub fn with_dir(dir: &Path) -> Result<Self, CliError> {
        let io = |source| CliError::Io { path: dir.display().to_string(), source };
        let mut user = BTreeMap::new();
        for entry in std::fs::read_dir(dir).map_err(io)? {
            let path = entry.map_err(io)?.path();
            let ext = path.extension().and_then(|e| e.to_str());
            if !matches!(ext, Some("json" | "toml")) {
                continue;
            }
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                // the first one wins when both extensions exist
                user.entry(stem.to_string()).or_insert(path);
            }
        }
        Ok(Examples { user })
    }

    /// Built-in keys first, then user keys not shadowing a built-in.
    pub fn list(&self) -> Vec<ExampleInfo> {
        let mut out: Vec<ExampleInfo> = registry::KEYS
            .iter()
            .map(|k| ExampleInfo { key: k.to_string(), description: registry::describe(k).into(), source: "builtin".into() })
            .collect();
        for (k, p) in &self.user {
            if !registry::KEYS.contains(&k.as_str()) {
                out.push(ExampleInfo { key: k.clone(), description: String::new(), source: p.display().to_string() });
            }
        }
        out
    }

    pub fn resolve(&self, key: &str) -> Result<ManifoldSpec, CliError> {
        match registry::lookup(key, &BTreeMap::new()) {
            Ok(spec) => Ok(spec),
            Err(e) => match self.user.get(key) {
                Some(path) => load_manifest(path),
                None => Err(CliError::Usage(format!("{e}; see list-examples"))),
            },
        }
    }
}
