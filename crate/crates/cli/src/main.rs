use altramsey_cli::{run, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let code = run(&cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}
