//! `fqcount`: exact counts, identity suites and bound verification reports.
//!
//! Exit codes: 0 success, 1 a mathematical assertion failed, 2 usage error,
//! 3 a resource limit was hit.

mod args;
mod commands;
mod output;

use args::{Cli, Command, Common};
use clap::Parser;
use commands::{Failure, Outcome};
use std::process::ExitCode;

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Count(a) => &a.common,
        Command::Ssp(a) => &a.common,
        Command::Identities(a) => &a.common,
        Command::Verify(a) => &a.common,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Ssp(a) => commands::ssp(a),
        Command::Identities(a) => commands::identities(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on unknown or missing flags
    let cli = Cli::parse();
    let opts = common(&cli.command);
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage error", m),
                Failure::Limit(m) => (3, "limit exceeded", m),
                Failure::Math(m) => (1, "assertion failed", m),
            };
            eprintln!("fqcount: {kind}: {msg}");
            return ExitCode::from(code);
        }
    };
    let text = outcome.report.render(opts.format);
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("fqcount: usage error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", outcome.report.summary_line());
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("fqcount: assertion failed: see the failing rows");
        ExitCode::from(1)
    }
}
