use std::io;
use std::process::ExitCode;

use clap::Parser;
use phrasedb::cli::{run, Cli, Io};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdin = io::stdin().lock();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let mut io = Io { stdin: &mut stdin, stdout: &mut stdout, stderr: &mut stderr };
    ExitCode::from(run(&cli, &mut io).code())
}
