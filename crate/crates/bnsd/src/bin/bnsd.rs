use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(bnsd::cli::run())
}
