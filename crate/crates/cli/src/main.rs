use std::process::ExitCode;

fn main() -> ExitCode {
    algpoly_cli::app::run()
}
