use clap::Parser;

fn main() {
    let cli = wild11_cli::Cli::parse();
    std::process::exit(wild11_cli::run(&cli));
}
