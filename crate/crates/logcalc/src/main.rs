use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use logcalc::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = out.flush();
            eprintln!("logcalc: {e}");
            2
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
