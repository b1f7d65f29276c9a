//! Command-line front end for the probed downconversion simulator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{CommandError, Output};
use config::RunConfig;
use std::path::{Path, PathBuf};

/// Relative `--out` paths are resolved against this directory when it is set.
pub const OUT_DIR_ENV: &str = "PDC_ZENO_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "pdc-zeno",
    version,
    about = "Zeno and anti-Zeno dynamics of probed downconversion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Propagate one parameter set and report output photon numbers.
    Simulate(CommonArgs),
    /// Classify the regime from the characteristic cubic.
    Classify(CommonArgs),
    /// Evaluate n_s on a two-dimensional parameter grid.
    Sweep(CommonArgs),
    /// Check the dressed-mode propagation against the direct one.
    DressedCheck(CommonArgs),
    /// Locate the anti-Zeno ridge kappa_opt(delta) and fit a line to it.
    Ridge(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub length: Option<f64>,
    /// simulate: exact | ode | closed-form; sweep: numeric | closed_form_when_applicable
    #[arg(long)]
    pub engine: Option<String>,
    /// Flat JSON config document; flags take precedence over its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub step_tolerance: Option<f64>,
    #[arg(long)]
    pub delta_min: Option<f64>,
    #[arg(long)]
    pub delta_max: Option<f64>,
    #[arg(long)]
    pub delta_count: Option<usize>,
}

impl CommonArgs {
    fn flags(&self) -> RunConfig {
        RunConfig {
            gamma: self.gamma,
            kappa: self.kappa,
            delta: self.delta,
            length: self.length,
            engine: self.engine.clone(),
            step_tolerance: self.step_tolerance,
            seed: self.seed,
            delta_min: self.delta_min,
            delta_max: self.delta_max,
            delta_count: self.delta_count,
            ..Default::default()
        }
    }
}

type Handler = fn(&RunConfig) -> Result<Output, CommandError>;

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (args, handler): (&CommonArgs, Handler) = match &cli.command {
        Command::Simulate(a) => (a, commands::simulate),
        Command::Classify(a) => (a, commands::classify),
        Command::Sweep(a) => (a, commands::sweep),
        Command::DressedCheck(a) => (a, commands::dressed_check),
        Command::Ridge(a) => (a, commands::ridge),
    };

    let base = match &args.config {
        Some(path) => match RunConfig::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e:#}");
                return commands::EXIT_INVALID;
            }
        },
        None => RunConfig::default(),
    };
    let cfg = base.overridden_by(&args.flags());

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 1;
        }
    };

    match pool.install(|| handler(&cfg)) {
        Ok(output) => match emit(&output, args) {
            Ok(()) => output.code,
            Err(e) => {
                eprintln!("error: {e:#}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn render(output: &Output, format: Format) -> String {
    match format {
        Format::Csv => output.csv.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.json).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(output: &Output, args: &CommonArgs) -> anyhow::Result<()> {
    match &args.out {
        Some(path) => {
            let format =
                args.format
                    .unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
                        Some("json") => Format::Json,
                        _ => Format::Csv,
                    });
            let path = resolve_out(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, render(output, format))?;
            print!("{}", output.summary);
            println!("wrote {}", path.display());
        }
        None => match args.format {
            Some(format) => print!("{}", render(output, format)),
            None => print!("{}", output.summary),
        },
    }
    Ok(())
}
