use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use strip_bergman::config::ExperimentConfig;
use strip_bergman::run::{battery_catalog, execute};

#[derive(Parser)]
#[command(name = "strip-bergman", version, about = "Averaged Szegő projections and weighted Bergman projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write summary.json / series.csv / pairs.csv.
    Run(RunArgs),
    /// Print the built-in test functions and annihilators as JSON.
    ListBattery,
    /// Print the configuration (defaults plus file and flag overrides).
    ShowConfig(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Configuration file with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    pad: Option<String>,
    #[arg(long)]
    nx: Option<String>,
    #[arg(long)]
    ny: Option<String>,
    #[arg(long = "n_theta", alias = "n-theta")]
    n_theta: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    interp: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    ns: Option<String>,
    #[arg(long)]
    npsi: Option<String>,
    #[arg(long)]
    input: Option<String>,
    #[arg(long = "input_file", alias = "input-file")]
    input_file: Option<String>,
    #[arg(long = "max_iter", alias = "max-iter")]
    max_iter: Option<String>,
    #[arg(long = "stop_tol", alias = "stop-tol")]
    stop_tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "spectrum_k", alias = "spectrum-k")]
    spectrum_k: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    #[arg(long = "output_dir", alias = "output-dir")]
    output_dir: Option<String>,
}

impl RunArgs {
    fn overrides(&self) -> Vec<(&'static str, &String)> {
        let pairs: [(&'static str, &Option<String>); 20] = [
            ("experiment", &self.experiment),
            ("m", &self.m),
            ("pad", &self.pad),
            ("nx", &self.nx),
            ("ny", &self.ny),
            ("n_theta", &self.n_theta),
            ("n", &self.n),
            ("alpha", &self.alpha),
            ("interp", &self.interp),
            ("eps", &self.eps),
            ("ns", &self.ns),
            ("npsi", &self.npsi),
            ("input", &self.input),
            ("input_file", &self.input_file),
            ("max_iter", &self.max_iter),
            ("stop_tol", &self.stop_tol),
            ("seed", &self.seed),
            ("spectrum_k", &self.spectrum_k),
            ("threads", &self.threads),
            ("output_dir", &self.output_dir),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }

    fn load(&self) -> strip_bergman::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_file(p)?,
            None => ExperimentConfig::default(),
        };
        for (k, v) in self.overrides() {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBattery => {
            print!("{}", battery_catalog());
            ExitCode::SUCCESS
        }
        Command::ShowConfig(args) => match args.load() {
            Ok(cfg) => {
                print!("{}", cfg.to_text());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Run(args) => {
            let cfg = match args.load() {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if cfg.threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build_global();
            }
            ExitCode::from(execute(&cfg) as u8)
        }
    }
}
