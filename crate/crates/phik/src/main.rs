use std::process::ExitCode;

fn main() -> ExitCode {
    phik::cli::main_with_args(std::env::args_os())
}
