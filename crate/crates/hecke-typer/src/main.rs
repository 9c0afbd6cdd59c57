use clap::Parser;

fn main() {
    let cli = hecke_typer::cli::Cli::parse();
    std::process::exit(hecke_typer::cli::run(cli));
}
