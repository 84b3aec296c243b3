use std::io::Read;
use std::process::ExitCode;

use attneg_cli::{run, Cli, CliError, Format};
use clap::Parser;

fn read_input(path: &str) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        msg: e.to_string(),
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let input = match cli.command.file().map(read_input).transpose() {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run(&cli.command, input.as_deref()) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                ),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
