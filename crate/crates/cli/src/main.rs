use clap::Parser;

use hyperlam_cli::{execute, Cli, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = outcome.write() {
                eprintln!("error: {e}");
                std::process::exit(EXIT_INPUT);
            }
            std::process::exit(outcome.code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
