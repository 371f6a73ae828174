use clap::Parser;
use pnmcts_harness::cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    run(cli, &mut std::io::stdout().lock())
}
