use serde::Serialize;

/// One problem found in a manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: String,
    /// e.g. `fiber[1].alpha.holo[0]`; empty for the whole document
    pub path: String,
    pub message: String,
}

impl Violation {
    pub fn new(code: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { code: code.to_string(), path: path.into(), message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid manifest ({} violation{})", .0.len(), if .0.len() == 1 { "" } else { "s" })]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gerst_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for a computational rejection, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        use gerst_core::Error as E;
        match self {
            CliError::Core(E::NotPoisson { .. } | E::Structural(_) | E::Escapes(_) | E::StarClosure(_) | E::Singular(_)) => 1,
            _ => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        use gerst_core::Error as E;
        match self {
            CliError::Invalid(_) => "invalid-manifest",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                E::Parse(_) => "parse",
                E::Dimension { .. } => "dimension",
                E::Index { .. } => "index",
                E::Unresolvable(_) => "oracle-closure",
                E::Oracle(_) => "oracle",
                E::Structural(_) => "structural",
                E::MissingBracket(..) => "missing-bracket",
                E::Jacobi(..) => "jacobi",
                E::Assumption(_) => "assumption",
                E::Unsupported(_) => "unsupported",
                E::Escapes(_) => "escapes",
                E::StarClosure(_) => "star",
                E::NotPoisson { .. } => "not-poisson",
                E::Singular(_) => "singular",
                E::Input(_) => "input",
            },
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            CliError::Invalid(v) => v,
            _ => &[],
        }
    }
}
