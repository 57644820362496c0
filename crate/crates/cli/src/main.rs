mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use error::CliError;

fn json_requested(raw: &[String]) -> bool {
    raw.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || raw.iter().any(|a| a == "--format=json")
}

fn report_error(err: &CliError, format: Format) {
    let mut stderr = std::io::stderr().lock();
    match format {
        Format::Json => {
            let line = serde_json::json!({
                "error": err.kind(),
                "message": err.to_string(),
                "exit_code": err.exit_code(),
            });
            let _ = writeln!(stderr, "{line}");
        }
        Format::Text => {
            let _ = writeln!(stderr, "error: {err}");
        }
    }
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
                || !json_requested(&raw)
            {
                e.exit();
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            report_error(&CliError::Usage(first.to_string()), Format::Json);
            return ExitCode::from(2);
        }
    };
    let format = cli.common.format;
    if let Some(t) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            report_error(&CliError::Usage(format!("cannot configure {t} threads: {e}")), format);
            return ExitCode::from(2);
        }
    }
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(&e, format);
            ExitCode::from(e.exit_code())
        }
    }
}
