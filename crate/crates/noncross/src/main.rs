use clap::Parser;

fn main() {
    let cli = noncross::cli::Cli::parse();
    std::process::exit(noncross::cli::run(cli));
}
