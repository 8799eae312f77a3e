use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(facetlp::cli::run(std::env::args()) as u8)
}
