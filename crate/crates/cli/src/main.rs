//! `operadkit`: batch front end. Exit 0 when every check passes, 1 when
//! some check fails, 2 on usage or input errors.

mod args;
mod commands;
mod inputs;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, EnvBounds, Format};
use commands::{Output, Resolved};

fn env_bounds() -> Result<args::BoundFlags, String> {
    match std::env::var("OPERADKIT_BOUNDS") {
        Ok(text) if !text.trim().is_empty() => {
            EnvBounds::try_parse_from(text.split_whitespace()).map(|e| e.bounds).map_err(|e| format!("OPERADKIT_BOUNDS: {e}"))
        }
        _ => Ok(args::BoundFlags::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = match env_bounds() {
        Ok(env) => cli.run.bounds.or(&env),
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let res = Resolved::from_flags(&flags);
    let mut out = Output::new(cli.run.format);
    let lambda = if res.max_lambda == usize::MAX { "unbounded".to_string() } else { res.max_lambda.to_string() };
    out.header(format!("# run: {}, max-level {}, max-lambda {lambda}, seed {}", res.bounds, res.max_level, cli.run.seed));
    if let Err(e) = commands::run(&cli.command, &res, &mut out) {
        eprintln!("error: {e}");
        if e.starts_with("unknown builtin") {
            eprintln!("builtins: {}", commands::builtin_list());
        }
        return ExitCode::from(2);
    }
    if cli.run.format == Format::Text {
        out.text.push_str(&format!("# verdict: {}\n", if out.failed { "FAIL" } else { "PASS" }));
    }
    // a closed pipe (`| head`) ends the output early, not the verdict
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes()).and_then(|()| stdout.flush());
    ExitCode::from(u8::from(out.failed))
}
