//! Experiment CLI.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when the solver fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ieldtm::harness::{self, ExperimentConfig, Mode, Problem};
use ieldtm::Error;

#[derive(Parser)]
#[command(name = "ieldtm", version, about = "IELDTM experiments for the viscous Burgers equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single run; writes summary.json, solution.csv and steps.csv.
    Solve(ConfigArgs),
    /// Fixed-step order study over a list of step sizes.
    Converge {
        #[command(flatten)]
        config: ConfigArgs,
        /// Step sizes, strictly decreasing.
        #[arg(long, value_delimiter = ',', default_value = "0.02,0.01,0.005,0.0025")]
        dts: Vec<f64>,
    },
    /// Single run with adaptive step control.
    Adaptive(ConfigArgs),
    /// Dense solution profiles at the given times.
    Profiles {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<f64>,
    },
    /// PDE residuals of the exact solutions.
    OracleCheck {
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// JSON file with a full configuration; overrides the other flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Problem::Burgers1d)]
    problem: Problem,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long = "N", default_value_t = 20)]
    n: usize,
    #[arg(long = "M")]
    m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    #[arg(long = "K", default_value_t = 3)]
    k: usize,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    tf: f64,
    /// Reporting points, comma separated.
    #[arg(long, value_delimiter = ',')]
    points: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    newton_tol: Option<f64>,
}

impl ConfigArgs {
    fn resolve(&self, forced: Option<Mode>) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig {
                problem: self.problem,
                eps: self.eps,
                n: self.n,
                m: self.m,
                theta: self.theta,
                k: self.k,
                mode: if self.tol.is_some() && self.dt.is_none() { Mode::Adaptive } else { Mode::Fixed },
                dt: self.dt,
                tol: self.tol,
                tf: self.tf,
                report_points: self.points.clone(),
                output_dir: self.out.clone(),
                newton_tol: self.newton_tol,
                dt_min: None,
                dt_max: None,
            },
        };
        if let Some(mode) = forced {
            cfg.mode = mode;
        }
        if cfg.output_dir.is_none() {
            cfg.output_dir = self.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve(args) => solve(args.resolve(None)?),
        Command::Adaptive(args) => solve(args.resolve(Some(Mode::Adaptive))?),
        Command::Converge { mut config, dts } => {
            // individual runs take their step size from --dts
            config.dt = config.dt.or(dts.first().copied());
            let cfg = config.resolve(Some(Mode::Fixed))?;
            let table = harness::converge(&cfg, &dts)?;
            print!("{}", harness::convergence_csv(&table).as_str());
            Ok(())
        }
        Command::Profiles { config, times } => {
            let cfg = config.resolve(None)?;
            let report = harness::profile_snapshots(&cfg, &times)?;
            for p in &report.profiles {
                println!("t = {}: min {:.6e}, max {:.6e}", p.t, p.min(), p.max());
            }
            println!(
                "data range [{:.6e}, {:.6e}], allowed [{:.6e}, {:.6e}], non-oscillatory: {}",
                report.data_range.0,
                report.data_range.1,
                report.allowed_range.0,
                report.allowed_range.1,
                report.non_oscillatory
            );
            Ok(())
        }
        Command::OracleCheck { eps, samples } => print_json(&harness::oracle_check(eps, samples)?),
    }
}

fn solve(cfg: ExperimentConfig) -> Result<(), Error> {
    let summary = harness::run(&cfg)?;
    print_json(&summary)?;
    eprintln!("wall time: {:.3} s", summary.wall_time);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}
