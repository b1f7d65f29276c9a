use clap::Parser;

fn main() {
    let cli = pdc_zeno_cli::Cli::parse();
    std::process::exit(pdc_zeno_cli::run(cli));
}
