use clap::Parser;

fn main() {
    let cli = brimlab::Cli::parse();
    let out = brimlab::run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
