use clap::Parser;

fn main() {
    let cli = sinefold_cli::Cli::parse();
    std::process::exit(sinefold_cli::run(cli));
}
