use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use weno_bench::{BenchError, Overrides, RunConfig, Scheme};

/// Adaptive-order WENO experiments.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one case and write the final field and a summary.
    Run(Common),
    /// Refine the mesh and tabulate errors and observed orders.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Schemes to tabulate.
        #[arg(long, value_delimiter = ',', default_value = "ao,aoa")]
        variants: Vec<Scheme>,
    },
    /// Run two configurations on the same grid and difference them.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Second configuration; defaults to the first with the other scheme.
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Case name: sine_advection, jiang_shu_composite, dmr or sod.
    #[arg(long)]
    case: Option<String>,
    /// Reconstruction: ao or aoa.
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    levels: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    snapshot_every: Option<f64>,
    #[arg(long)]
    gamma_hi: Option<f64>,
    #[arg(long)]
    gamma_lo: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, BenchError> {
        let overrides = Overrides {
            case: self.case.clone(),
            scheme: self.scheme,
            nx: self.nx,
            ny: self.ny,
            cfl: self.cfl,
            t_final: self.t_final,
            gamma_hi: self.gamma_hi,
            gamma_lo: self.gamma_lo,
            epsilon: self.epsilon,
            levels: self.levels,
            workers: self.workers,
            out: self.out.clone(),
            snapshot_every: self.snapshot_every,
        };
        RunConfig::assemble(self.config.as_deref(), &overrides)
    }
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(common) => {
            let cfg = common.resolve()?;
            let report = weno_bench::run(&cfg)?;
            let s = &report.summary;
            println!(
                "{} ({}): {} steps to t = {} in {:.2} s",
                s.case, s.scheme, s.steps, s.t, report.wall_seconds
            );
            if let Some(e) = &s.error {
                println!("L1 = {:.6e}  Linf = {:.6e}", e.l1, e.linf);
            }
            println!("results in {}", cfg.output.dir.display());
        }
        Command::Converge { common, variants } => {
            let cfg = common.resolve()?;
            let rows = weno_bench::converge(&cfg, &variants)?;
            println!("{:>6} {:>6} {:>12} {:>8} {:>12} {:>8}", "scheme", "n", "L1", "order", "Linf", "order");
            let order = |o: Option<f64>| o.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into());
            for r in rows {
                println!(
                    "{:>6} {:>6} {:>12.4e} {:>8} {:>12.4e} {:>8}",
                    r.scheme,
                    r.n,
                    r.l1,
                    order(r.l1_order),
                    r.linf,
                    order(r.linf_order)
                );
            }
        }
        Command::Compare { common, against } => {
            let a = common.resolve()?;
            let b = match &against {
                Some(path) => {
                    RunConfig::load(path).with_context(|| format!("loading {}", path.display()))?
                }
                None => a.with_scheme(a.scheme.variant.other()),
            };
            b.validate()?;
            let report = weno_bench::compare(&a, &b, &a.output.dir)?;
            for d in &report.difference {
                println!("{:>12}: L1 = {:.6e}  Linf = {:.6e}", d.name, d.l1, d.linf);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err.downcast_ref::<BenchError>().map_or(1, BenchError::exit_code);
            if let Some(BenchError::BlowUp { diagnostics: Some(p), .. }) = err.downcast_ref() {
                eprintln!("diagnostics written to {}", p.display());
            }
            ExitCode::from(code as u8)
        }
    }
}
