//! File formats and subcommands of the `polya` tool.
//!
//! Exit status: 0 on success, 2 when an analysis fails with printed evidence (for
//! example a hull of dimension 2 when determinizing), 1 on usage or parse errors.

pub mod app;
pub mod error;
pub mod expr_format;
pub mod formats;
pub mod ratfun;

pub use app::{hull_report, run, Cli, Command, Outcome, Property, UsageError};
pub use error::ParseError;
pub use expr_format::{parse_expr, write_expr};
pub use formats::{parse_rep, parse_source, parse_wfa, write_rep, write_wfa, Source};
pub use ratfun::parse_ratfun;
