use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gerst::render;
use gerst::{CliError, Command, Examples, Input, MuSource, RunConfig};
use gerst_core::kuranishi::DEFAULT_MAX_ORDER;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Validate,
    Cohomology,
    Kuranishi,
    Poisson,
    Mirror,
    ListExamples,
    ShowExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MuArg {
    /// the bivector declared by the example or manifest
    Builtin,
    Zero,
}

/// Differential Gerstenhaber algebras of nilmanifolds and solvmanifolds.
#[derive(Parser, Debug)]
#[command(name = "gerst", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// built-in or user example key
    example: Option<String>,
    /// JSON or TOML manifest
    #[arg(long, conflicts_with = "example")]
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = MuArg::Builtin)]
    mu: MuArg,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        CommandArg::Validate => Command::Validate,
        CommandArg::Cohomology => Command::Cohomology,
        CommandArg::Kuranishi => Command::Kuranishi,
        CommandArg::Poisson => Command::Poisson,
        CommandArg::Mirror => Command::Mirror,
        CommandArg::ListExamples => Command::ListExamples,
        CommandArg::ShowExample => Command::ShowExample,
    };
    let input = match (cli.example, cli.manifest) {
        (Some(k), None) => Input::Example(k),
        (None, Some(p)) => Input::Manifest(p),
        _ => Input::None,
    };
    let cfg = RunConfig {
        command,
        input,
        max_order: cli.max_order,
        mu: match cli.mu {
            MuArg::Builtin => MuSource::Builtin,
            MuArg::Zero => MuSource::Zero,
        },
    };
    let result = Examples::from_env().and_then(|ex| gerst::run(&cfg, &ex));
    let (text, code) = match result {
        Ok(o) => {
            let text = match cli.format {
                FormatArg::Json => render::json(&o.value),
                FormatArg::Text => render::text(&o),
            };
            (text, o.status.exit_code())
        }
        Err(e) => {
            eprint!("{}", render::error_text(&e));
            let text = match cli.format {
                FormatArg::Json => render::json(&render::error_json(&e)),
                FormatArg::Text => String::new(),
            };
            (text, e.exit_code())
        }
    };
    if let Err(e) = emit(&cli.out, &text) {
        eprint!("{}", render::error_text(&e));
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
