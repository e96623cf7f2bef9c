use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use casimir_cli::config::{ConfigError, Figure, RunConfig, Settings};
use casimir_cli::golden::{self, GoldenOptions};
use casimir_cli::sweep::{self, RowStatus};
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_GOLDEN: u8 = 4;

#[derive(Parser)]
#[command(name = "casimir", version, about = "Casimir free energy of concentric spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// lg(-beta F t) against d/a for several temperatures
    Fig1(RunArgs),
    /// lg(-beta F) against d/a at high temperature
    Fig2(RunArgs),
    /// lg(-beta F t) against t for three gap ratios
    Fig3(RunArgs),
    /// Evaluate single points (CSV on stdout unless --out is given)
    Point(RunArgs),
    /// Run the reference checks
    Check(CheckArgs),
}

#[derive(Args, Default)]
struct RunArgs {
    /// Comma-separated list of d/a values
    #[arg(long, allow_hyphen_values = true)]
    gap_ratio: Option<String>,
    /// Comma-separated list of t = 2 pi a / beta values (0 selects the energy)
    #[arg(long, allow_hyphen_values = true)]
    temperature: Option<String>,
    /// Static permittivity, a number or "inf"
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// constant | oscillator | conductor
    #[arg(long)]
    model: Option<String>,
    /// Oscillator frequency in units of 1/a
    #[arg(long)]
    omega0: Option<String>,
    /// static | dynamic | conductor | narrow-slit | plates | lifshitz
    #[arg(long)]
    method: Option<String>,
    /// Zero-frequency TE convention: vanishing | conductor-limit
    #[arg(long)]
    zero_te: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Cap on the angular momentum
    #[arg(long)]
    lmax: Option<String>,
    /// Cap on the Matsubara index
    #[arg(long)]
    nmax: Option<String>,
    /// Output path, "-" for stdout
    #[arg(long)]
    out: Option<String>,
    /// key = value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for the sweep
    #[arg(long)]
    threads: Option<String>,
    /// Append a wall_time_s column
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Only run the listed criteria
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    perturb_sigma: f64,
}

impl RunArgs {
    fn settings(&self) -> Result<Settings, ConfigError> {
        let mut s = match &self.config {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        let flags = [
            ("gap_ratio", &self.gap_ratio),
            ("temperature", &self.temperature),
            ("epsilon", &self.epsilon),
            ("model", &self.model),
            ("omega0", &self.omega0),
            ("method", &self.method),
            ("zero_te", &self.zero_te),
            ("tol", &self.tol),
            ("lmax", &self.lmax),
            ("nmax", &self.nmax),
            ("out", &self.out),
            ("threads", &self.threads),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                s.set(key, v.clone());
            }
        }
        if self.timing {
            s.set("timing", "true");
        }
        Ok(s)
    }
}

fn sweep(fig: Figure, args: &RunArgs) -> anyhow::Result<u8> {
    let cfg = RunConfig::resolve(fig, &args.settings()?)?;
    let rows = sweep::run(&cfg, true)?;
    match &cfg.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(f);
            sweep::write_csv(&rows, cfg.timing, &mut w)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => sweep::write_csv(&rows, cfg.timing, io::stdout().lock())?,
    }
    let failed = rows.iter().filter(|r| r.status == RowStatus::NonConvergence).count();
    let invalid = rows.iter().filter(|r| r.status == RowStatus::Invalid).count();
    if failed > 0 {
        eprintln!("{failed} row(s) did not converge");
        return Ok(EXIT_CONVERGENCE);
    }
    if invalid > 0 {
        eprintln!("{invalid} row(s) had invalid parameters");
        return Ok(EXIT_CONFIG);
    }
    Ok(0)
}

fn check(args: &CheckArgs) -> anyhow::Result<u8> {
    if !(args.tol > 0.0 && args.tol <= 1e-2) {
        return Err(ConfigError(format!("tolerance must lie in (0, 1e-2], got {}", args.tol)).into());
    }
    let opts = GoldenOptions {
        tol: args.tol,
        sigma_perturbation: args.perturb_sigma,
    };
    let ids: Vec<u8> = if args.only.is_empty() {
        golden::criteria().map(|(id, _)| id).collect()
    } else {
        args.only.clone()
    };
    let mut failures = 0;
    for id in ids {
        let c = golden::run_check(id, &opts).ok_or_else(|| ConfigError(format!("no criterion {id}")))?;
        println!("{c}");
        if !c.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} check(s) failed");
        return Ok(EXIT_GOLDEN);
    }
    Ok(0)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return EXIT_CONFIG;
    }
    match e.downcast_ref::<casimir_core::Error>() {
        Some(casimir_core::Error::NonConvergence { .. }) => EXIT_CONVERGENCE,
        Some(casimir_core::Error::InvalidInput(_)) => EXIT_CONFIG,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fig1(a) => sweep(Figure::Fig1, a),
        Command::Fig2(a) => sweep(Figure::Fig2, a),
        Command::Fig3(a) => sweep(Figure::Fig3, a),
        Command::Point(a) => sweep(Figure::Point, a),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
