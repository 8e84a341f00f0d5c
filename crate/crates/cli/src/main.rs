use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ellipmean_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with 2 on bad flags and 0 on --help
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = run(cli, &mut out);
    let _ = out.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
