use std::process::ExitCode;

fn main() -> ExitCode {
    muntz_lab::cli::run()
}
