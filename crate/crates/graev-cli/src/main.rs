use std::process::ExitCode;

fn main() -> ExitCode {
    graev_cli::run_main()
}
