use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ecbasis_cli::{run, Command, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "ecbasis",
    version,
    about = "Normalized B-bases of EC spaces: plots, curves, meshes and timings"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,
    /// JSON config describing the space, curve or surface.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Sample count along each basis function or curve.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Surface sampling grid, e.g. 50x100.
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Highest derivative order written.
    #[arg(long, global = true, default_value_t = 0)]
    dmax: usize,
    /// Abort when a construction stage is too ill-conditioned.
    #[arg(long, global = true)]
    check_conditioning: bool,
    #[arg(long, global = true, default_value_t = 6)]
    expected_digits: u32,
    /// Timed trials per benchmark stage.
    #[arg(long, global = true, default_value_t = 10)]
    trials: usize,
    /// Significance level of the benchmark confidence intervals.
    #[arg(long, global = true, default_value_t = 0.05)]
    significance: f64,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum CommandArg {
    /// Sample the ordinary basis and the normalized B-basis.
    Space,
    /// Sample a B-curve and its derivatives.
    Curve,
    /// Tessellate a B-surface, optionally colored by a curvature field.
    Surface,
    /// Locate the critical length of a space.
    CriticalLength,
    /// Time construction and evaluation stages.
    Bench,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected M0xM1, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(config) = cli.config else {
        eprintln!("error: --config is required");
        return ExitCode::from(2);
    };
    let command = match cli.command {
        CommandArg::Space => Command::Space,
        CommandArg::Curve => Command::Curve,
        CommandArg::Surface => Command::Surface,
        CommandArg::CriticalLength => Command::CriticalLength,
        CommandArg::Bench => Command::Bench,
    };
    let rc = RunConfig {
        samples: cli.samples,
        grid: cli.grid,
        d_max: cli.dmax,
        check_conditioning: cli.check_conditioning,
        expected_digits: cli.expected_digits,
        trials: cli.trials,
        significance: cli.significance,
        ..RunConfig::new(command, config, cli.out)
    };
    match run(&rc) {
        Ok(report) => {
            for line in &report.lines {
                println!("{line}");
            }
            for file in &report.files {
                println!("wrote {}", file.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
