use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bosegas::commands::{self, Output};
use bosegas::config::{Method, PartialConfig};
use bosegas::table::{emit, Format};
use bosegas::{provenance, RunConfig};
use bosegas_core::exact_excitations::{BranchType, DEFAULT_Q_POINTS};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bosegas", version, about = "Exact, Gaussian and Bogoliubov results for the 1D Bose gas")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Density rho
    #[arg(long, global = true)]
    rho: Option<f64>,
    /// Single coupling gamma = c/rho
    #[arg(long, global = true)]
    gamma: Option<f64>,
    #[arg(long, global = true)]
    gamma_min: Option<f64>,
    #[arg(long, global = true)]
    gamma_max: Option<f64>,
    /// Number of gamma samples in the range
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Logarithmic gamma spacing (the default)
    #[arg(long, global = true, conflicts_with = "linear")]
    log: bool,
    /// Linear gamma spacing
    #[arg(long, global = true)]
    linear: bool,
    /// Temperature (Gaussian method only)
    #[arg(long, global = true)]
    temp: Option<f64>,
    /// Base quadrature/Nystrom node count
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Gaussian gap-equation tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (directory for `figures`); stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Methods to evaluate, comma separated
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    /// key=value configuration file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    I,
    Ii,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Ground-state energy per particle for each method
    Ground,
    /// Sound velocity for each method
    Sound,
    /// Exact excitation branches with the approximate spectra at the same momentum
    Excitations {
        #[arg(long, value_enum, default_value = "both")]
        branch: BranchArg,
        /// Bare-momentum samples per branch
        #[arg(long, default_value_t = DEFAULT_Q_POINTS)]
        q_points: usize,
    },
    /// Gaussian moments, condensate, gap and energy
    GaussianDetail,
    /// Regenerate the comparison tables fig1..fig4
    Figures {
        #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3, 4])]
        which: Vec<u8>,
    },
}

impl GlobalArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            rho: self.rho,
            gamma: self.gamma,
            gamma_min: self.gamma_min,
            gamma_max: self.gamma_max,
            points: self.points,
            log: if self.log {
                Some(true)
            } else if self.linear {
                Some(false)
            } else {
                None
            },
            temperature: self.temp,
            nodes: self.nodes,
            tol: self.tol,
            format: self.format,
            out: self.out.clone(),
            methods: self.methods.clone(),
        }
    }

    fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(p) => PartialConfig::from_file(p)?,
            None => PartialConfig::default(),
        };
        self.partial().over(file).resolve()
    }
}

fn write_output(cfg: &RunConfig, args: &[String], out: &Output) -> Result<()> {
    let mut meta = provenance(args);
    meta.extend(cfg.describe());
    let text = emit(cfg.format, &meta, &out.table)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run() -> Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let cfg = cli.global.resolve()?;
    let out = match cli.command {
        Command::Ground => commands::cmd_ground(&cfg)?,
        Command::Sound => commands::cmd_sound(&cfg)?,
        Command::GaussianDetail => commands::cmd_gaussian_detail(&cfg)?,
        Command::Excitations { branch, q_points } => {
            let branches = match branch {
                BranchArg::I => vec![BranchType::TypeI],
                BranchArg::Ii => vec![BranchType::TypeII],
                BranchArg::Both => vec![BranchType::TypeI, BranchType::TypeII],
            };
            commands::cmd_excitations(&cfg, &branches, q_points)?
        }
        Command::Figures { which } => {
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let (paths, warnings) = commands::cmd_figures(&which, &dir, &cfg, &provenance(&args))?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
            return Ok(());
        }
    };
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    out.ensure_some_success()?;
    write_output(&cfg, &args, &out)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
