//! Standard-library companion to `golden-core`: timed and parallel
//! verification, versioned JSON reports, table dumps and the `golden` CLI.

pub mod cli;
pub mod dump;
pub mod report;
pub mod verify;

pub use report::{EvalJson, ReportJson, SidecarJson, SuiteJson, SCHEMA_VERSION};
pub use verify::{verify, verify_all, verify_all_with_table};
