//! Library side of the command line tool: the verification battery, shared
//! by the `verify` subcommand and the acceptance test target.

pub mod battery;

pub use battery::{run_all, CriterionResult};
