use clap::Parser;

use mmc::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = run(&cli.command, &mut out) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
