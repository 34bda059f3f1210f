//! Pipelines behind the `conelift` binary: run manifests, table reproduction, and the
//! helpers the subcommands share.

pub mod catalog;
pub mod manifest;
pub mod pipeline;
pub mod table;

use std::fmt;

/// Exit status for usage and schema errors.
pub const EXIT_SCHEMA: u8 = 2;
/// Exit status when a search budget ran out.
pub const EXIT_BUDGET: u8 = 3;
/// Exit status when a produced object fails its own checks.
pub const EXIT_INVARIANT: u8 = 4;

/// A malformed manifest or argument.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid input: {}", self.0)
    }
}

impl std::error::Error for SchemaError {}

/// A lift or product that failed verification.
#[derive(Debug)]
pub struct InvariantViolation(pub String);

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant violated: {}", self.0)
    }
}

impl std::error::Error for InvariantViolation {}

/// Maps an error chain to the process exit status.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use conelift::Error as E;
    for cause in err.chain() {
        if cause.is::<SchemaError>() || cause.is::<serde_json::Error>() {
            return EXIT_SCHEMA;
        }
        if cause.is::<InvariantViolation>() {
            return EXIT_INVARIANT;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::NodeBudget { .. }
                | E::Unsimplifiable { .. }
                | E::KernelCap { .. }
                | E::AutomorphismCap { .. }
                | E::GroupTooLarge { .. } => EXIT_BUDGET,
                E::Orthogonality { .. } | E::NotFlat { .. } | E::Overflow(_) => EXIT_INVARIANT,
                _ => EXIT_SCHEMA,
            };
        }
    }
    1
}
