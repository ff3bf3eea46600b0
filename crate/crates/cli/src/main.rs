use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ksquant_cli::{command_name, run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(outcome) => {
            if let Some(data) = &outcome.data {
                let _ = out.write_all(data.as_bytes());
                eprint!("{}", outcome.human);
            } else if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&outcome.report).expect("serializable"));
                eprint!("{}", outcome.human);
            } else {
                let _ = out.write_all(outcome.human.as_bytes());
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let v = serde_json::json!({ "command": command_name(&cli.command), "error": e.to_string() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            ExitCode::from(e.exit_code())
        }
    }
}
