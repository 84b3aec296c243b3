//! Front end for `attneg`: the network fact language, command execution and
//! report rendering.

pub mod args;
pub mod dsl;
pub mod error;
pub mod run;

pub use args::{Cli, Command, Format};
pub use dsl::{parse, serialize, InputDocument, Species};
pub use error::CliError;
pub use run::{run, Report};
