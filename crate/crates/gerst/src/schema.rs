//! JSON schemas for every command's output, the error object and the manifest format.

use crate::commands::Command;

pub const VALIDATE: &str = include_str!("../schema/validate.schema.json");
pub const COHOMOLOGY: &str = include_str!("../schema/cohomology.schema.json");
pub const KURANISHI: &str = include_str!("../schema/kuranishi.schema.json");
pub const POISSON: &str = include_str!("../schema/poisson.schema.json");
pub const MIRROR: &str = include_str!("../schema/mirror.schema.json");
pub const LIST_EXAMPLES: &str = include_str!("../schema/list-examples.schema.json");
pub const MANIFEST: &str = include_str!("../schema/manifest.schema.json");
pub const ERROR: &str = include_str!("../schema/error.schema.json");

/// `show-example` prints a manifest, so it shares the manifest schema.
pub fn for_command(c: Command) -> &'static str {
    match c {
        Command::Validate => VALIDATE,
        Command::Cohomology => COHOMOLOGY,
        Command::Kuranishi => KURANISHI,
        Command::Poisson => POISSON,
        Command::Mirror => MIRROR,
        Command::ListExamples => LIST_EXAMPLES,
        Command::ShowExample => MANIFEST,
    }
}
