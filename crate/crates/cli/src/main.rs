use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use filtra_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, summary) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(filtra_cli::EXIT_USAGE as u8);
            }
            let mut text = summary.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(&format!("{}: {}\n", report.command, if report.passed { "pass" } else { "FAIL" }));
            emit(&text);
        }
        None => emit(&(json + "\n")),
    }
    ExitCode::from(exit_code(&report) as u8)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
