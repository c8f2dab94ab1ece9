//! Documents, reports and the `spectra` command line on top of the core
//! crate. [`run`] is the whole program minus process I/O, so tests can drive
//! it directly.

mod commands;
pub mod document;
pub mod dot;
pub mod report;

pub use commands::{run, RunOutput};
pub use document::{parse_instance, DocumentError, InstanceDocument};
pub use dot::to_dot;
pub use report::Report;
