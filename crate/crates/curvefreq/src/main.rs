use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(curvefreq::cli::run(std::env::args()) as u8)
}
