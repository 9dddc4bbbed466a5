use clap::Parser;

fn main() {
    let cli = covent_cli::Cli::parse();
    if let Err(e) = covent_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
