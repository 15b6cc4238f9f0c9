//! Command-line harness for `pcplab-core`: an expression language, JSON
//! forms, seeded sampling and the relation suites.

pub mod config;
pub mod json;
pub mod parse;
pub mod sample;
pub mod suites;

pub use config::{ConfigError, SessionConfig};
pub use parse::{parse_expr, serialize, Format, ParseError};
pub use suites::{run_suite, Suite};
