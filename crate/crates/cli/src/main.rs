mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Failure;
use output::Output;

fn emit(text: &str, cli: &Cli) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("--output: cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Failed(format!("cannot write output: {e}"))),
    }
}

fn render(out: &Output, cli: &Cli) -> String {
    out.render(cli.format.unwrap_or(Format::Text))
}

/// Runs the command; `Ok(false)` means a check did not hold.
fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Eval(a) => emit(&render(&commands::eval(a)?, cli), cli).map(|_| true),
        Command::Integrate(a) => emit(&render(&commands::integrate(a)?, cli), cli).map(|_| true),
        Command::Rect(a) => {
            let (out, matched) = commands::rect(a)?;
            emit(&render(&out, cli), cli)?;
            Ok(matched)
        }
        Command::Residues(a) => emit(&render(&commands::residues(a)?, cli), cli).map(|_| true),
        Command::Tail(a) => emit(&render(&commands::tail(a)?, cli), cli).map(|_| true),
        Command::Verify(a) => {
            let report = commands::verify(a)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            emit(&text, cli)?;
            Ok(report.overall_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let kind = if f.exit_code() == 2 {
                "usage error"
            } else {
                "error"
            };
            eprintln!("{kind}: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
