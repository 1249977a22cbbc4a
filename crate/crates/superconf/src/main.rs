use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;
use superconf::cli::{dispatch, Cli};
use superconf::exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(exit::PRECONDITION as u8);
        }
        Err(e) => {
            let body = json!({ "error": {
                "kind": "usage",
                "message": e.kind().to_string(),
                "detail": e.render().to_string(),
                "exit_code": exit::PRECONDITION,
            }});
            eprintln!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
            return ExitCode::from(exit::PRECONDITION as u8);
        }
    };
    match dispatch(&cli.command) {
        Ok((outcome, lines)) => {
            for l in lines {
                eprintln!("{l}");
            }
            let text = serde_json::to_string_pretty(&outcome.summary).expect("serializes");
            // A closed stdout (e.g. `| head`) is not an error of the run.
            let _ = writeln!(io::stdout().lock(), "{text}");
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::NUMERICAL as u8)
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializes"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
