use clap::Parser;
use witnesslab::cli::{run_to_completion, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run_to_completion(&cli));
}
