//! JSON batch front end: one job in, one JSON document out.
//!
//! Exit status: 0 when every check passed, 1 when a verification failed,
//! 2 for malformed input, 3 for a violated mathematical precondition.

pub mod commands;
pub mod error;
pub mod job;
pub mod verify;

pub use commands::{run, Outcome};
pub use error::{CliError, CliResult};
pub use job::{Command, JobSpec};
pub use verify::{CaseReport, Suite, VerifyReport};
