use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use mdcoint_cli::commands::{
    cmd_estimate, cmd_montecarlo, cmd_report, cmd_simulate, cmd_transform, cmd_unitroot, UsageError, Which,
};
use mdcoint_cli::config::RunConfig;
use mdcoint_cli::OUT_DIR_ENV;

#[derive(Parser)]
#[command(name = "mdcoint", version, about = "Money-demand cointegration toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(short, long)]
    config: PathBuf,
    /// Output directory; overrides the config and $MDCOINT_OUT_DIR.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build and write the aligned regression panel of every country.
    Transform(Common),
    /// ADF and PP tests on every panel variable.
    Unitroot(Common),
    /// DOLS/FMOLS estimates of the cointegrating equations.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Equation::Both)]
        equation: Equation,
        /// Largest DOLS lead/lag order considered.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Simulate the triangular system in [simulation].
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Bias, RMSE and rejection rates over simulated replications.
    Montecarlo {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        replications: Option<usize>,
    },
    /// Unit-root tables and both equations in one report.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_k: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Equation {
    Eq15,
    Eq20,
    Both,
}

fn out_dir(flag: Option<&Path>, cfg: &RunConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.as_ref().map(|p| cfg.resolve(p)))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("mdcoint-out"))
}

fn load(common: &Common) -> Result<(RunConfig, PathBuf)> {
    let cfg = RunConfig::load(&common.config)?;
    let out = out_dir(common.out.as_deref(), &cfg);
    Ok((cfg, out))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Transform(common) => {
            let (cfg, out) = load(&common)?;
            for p in cmd_transform(&cfg, &out)? {
                println!("{}", p.display());
            }
        }
        Command::Unitroot(common) => {
            let (cfg, out) = load(&common)?;
            let r = cmd_unitroot(&cfg)?;
            r.write(&out, "unitroot")?;
            print!("{}", r.text);
        }
        Command::Estimate { common, equation, max_k } => {
            let (cfg, out) = load(&common)?;
            let which = match equation {
                Equation::Eq15 => Which::Eq15,
                Equation::Eq20 => Which::Eq20,
                Equation::Both => Which::Both,
            };
            let r = cmd_estimate(&cfg, which, max_k)?;
            r.write(&out, "estimate")?;
            print!("{}", r.text);
        }
        Command::Simulate { common, seed } => {
            let (cfg, out) = load(&common)?;
            println!("{}", cmd_simulate(&cfg, seed, &out)?.display());
        }
        Command::Montecarlo { common, seed, replications } => {
            let (cfg, out) = load(&common)?;
            print!("{}", cmd_montecarlo(&cfg, seed, replications, &out)?);
        }
        Command::Report { common, max_k } => {
            let (cfg, out) = load(&common)?;
            let r = cmd_report(&cfg, max_k)?;
            r.write(&out, "report")?;
            print!("{}", r.text);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
