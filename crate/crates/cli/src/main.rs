use clap::Parser;
use pointwise_cli::{run_cli, Cli};

fn main() {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(text) => {
            if cli.out.is_none() {
                print!("{text}");
            }
        }
        Err(e) => {
            eprintln!("pointwise: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
