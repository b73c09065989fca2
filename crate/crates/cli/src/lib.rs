//! The `mvl` command-line front end.
//!
//! Exit status: 0 affirmative verdict, 1 negative verdict, 2 usage or parse
//! error, 3 resource bound hit, 4 engines disagree.

pub mod commands;
pub mod logic_file;
pub mod query;

use std::io::Write;

use clap::Parser;

pub use commands::{Cli, Outcome};

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(cli, out) {
        Ok(o) => o.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
