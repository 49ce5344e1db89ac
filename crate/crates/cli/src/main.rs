use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    maxclass::cli::run_with(std::env::args_os(), &mut out, &mut err).into()
}
