use std::process::ExitCode;

fn main() -> ExitCode {
    weylext::cli::main()
}
