use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let run = qbundle_cli::run_from(std::env::args_os());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(run.outcome.code() as u8)
}
