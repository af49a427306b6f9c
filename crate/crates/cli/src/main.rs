use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use continuum_cli::{run_styled, Style};

fn main() -> ExitCode {
    let style = Style {
        color: std::env::var_os("CONTINUUM_NO_COLOR").is_none() && std::io::stderr().is_terminal(),
    };
    let outcome = run_styled(std::env::args_os(), style);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
