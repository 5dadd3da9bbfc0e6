use clap::Parser;

fn main() -> std::process::ExitCode {
    match hcc_cli::run(hcc_cli::Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
