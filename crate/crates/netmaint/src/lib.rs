//! File formats, reports and the command line of the netmaint toolkit.
//!
//! The algorithms live in [`netmaint_core`], which needs only `alloc`; this
//! crate adds JSON files, text and SVG rendering, run records with digests
//! and the `netmaint` binary.

pub mod cli;
pub mod error;
pub mod format;
pub mod render;
pub mod run;

pub use error::{CliError, EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_PRECONDITION, EXIT_VALIDATION};
