use clap::Parser;

fn main() {
    let cli = halfline::Cli::parse();
    let code = halfline::run(&cli, &mut std::io::stderr());
    std::process::exit(code);
}
