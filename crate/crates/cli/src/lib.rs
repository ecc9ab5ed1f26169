//! Command-line front end for the `rsp_core` solvers: the instance file
//! format, result reports, cross-checking and benchmark sweeps.

pub mod app;
pub mod check;
pub mod format;
pub mod report;
pub mod sweep;

pub use app::run;
pub use format::{parse_instance, write_instance, Instance, ParseError};
