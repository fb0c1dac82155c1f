use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use junction_cli::checks::{selfcheck, validation_grid};
use junction_cli::sweep::evaluate;
use junction_cli::{run_sweep, write_csv, Config, ConfigError, Recipe, SweepError};

const EXIT_FAILURE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_CHECK: u8 = 4;

/// Outage probabilities of a two-user NOMA mmWave downlink at a road
/// intersection, analytic and simulated.
#[derive(Parser, Debug)]
#[command(name = "junction", version)]
struct Cli {
    /// Config file of `key = value` pairs.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a config key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,

    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Monte Carlo trials per point.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Base seed of the Monte Carlo streams (default 1).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form outage of the configured scenario.
    Analytic,
    /// Monte Carlo outage of the configured scenario (10000 trials unless set).
    Mc,
    /// Run a figure recipe: fig2_distance moves the whole triplet along the
    /// X road so the destinations sit at x = d; fig3_link_distance scales
    /// both source-destination links to a common length.
    Sweep {
        /// Recipe name; falls back to the config's `recipe`.
        recipe: Option<Recipe>,
    },
    /// Analytic vs Monte Carlo on the geometry x intensity grid.
    Validate,
    /// Assert the qualitative trends of the figure recipes.
    Selfcheck,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn core_code(e: &junction_core::Error) -> u8 {
    match e {
        junction_core::Error::Validation { .. } => EXIT_VALIDATION,
        _ => EXIT_NUMERICAL,
    }
}

impl From<junction_core::Error> for Failure {
    fn from(e: junction_core::Error) -> Self {
        Failure::new(core_code(&e), e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Invalid(inner) => inner.into(),
            other => Failure::new(EXIT_VALIDATION, format!("configuration error: {other}")),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Config(c) => c.into(),
            SweepError::Point { ref source, .. } => Failure::new(core_code(source), e.to_string()),
        }
    }
}

fn io_failure(target: &str, e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_FAILURE, format!("{target}: {e}"))
}

fn load(cli: &Cli) -> Result<Config, Failure> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path).map_err(|e| io_failure(&path.display().to_string(), e))?,
        None => String::new(),
    };
    let mut cfg = Config::parse(&text)?;
    for assignment in &cli.set {
        cfg.apply(assignment)?;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| io_failure(&p.display().to_string(), e))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_failure(path: Option<&Path>, e: impl std::fmt::Display) -> Failure {
    let target = path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
    io_failure(&target, e)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = load(cli)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Analytic | Command::Mc => {
            if matches!(cli.command, Command::Analytic) {
                cfg.trials = 0;
            } else if cfg.trials == 0 {
                cfg.trials = 10_000;
            }
            let rows = cfg
                .scheme
                .schemes()
                .iter()
                .map(|&scheme| evaluate(&cfg, &cfg.scenario, scheme))
                .collect::<Result<Vec<_>, _>>()?;
            write_csv(&rows, None, output(out)?).map_err(|e| csv_failure(out, e))?;
        }
        Command::Sweep { recipe } => {
            let res = run_sweep(&cfg, *recipe)?;
            write_csv(&res.rows, Some(&res.variable), output(out)?).map_err(|e| csv_failure(out, e))?;
        }
        Command::Validate => {
            let trials = if cfg.trials == 0 { 10_000 } else { cfg.trials };
            let rows = validation_grid(&cfg, trials)?;
            let mut w = csv::Writer::from_writer(output(out)?);
            let header = [
                "geometry",
                "lambda",
                "scheme",
                "outage_d1_analytic",
                "outage_d1_mc",
                "outage_d1_stderr",
                "outage_d2_analytic",
                "outage_d2_mc",
                "outage_d2_stderr",
                "trials",
                "seed",
                "pass",
            ];
            w.write_record(header).map_err(|e| csv_failure(out, e))?;
            for r in &rows {
                let mut rec = vec![
                    r.geometry.to_string(),
                    r.lambda.to_string(),
                    r.scheme.name().to_string(),
                ];
                for i in 0..2 {
                    rec.extend([r.analytic[i], r.mc[i], r.std_err[i]].map(|x| x.to_string()));
                }
                rec.extend([trials.to_string(), cfg.seed.to_string(), r.passed().to_string()]);
                w.write_record(rec).map_err(|e| csv_failure(out, e))?;
            }
            w.flush().map_err(|e| csv_failure(out, e))?;
            let failed = rows.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(Failure::new(
                    EXIT_CHECK,
                    format!("{failed} of {} grid points disagree", rows.len()),
                ));
            }
            eprintln!("all {} grid points agree", rows.len());
        }
        Command::Selfcheck => {
            let outcomes = selfcheck(&cfg)?;
            let mut w = output(out)?;
            for o in &outcomes {
                writeln!(w, "{}", o.line()).map_err(|e| csv_failure(out, e))?;
            }
            w.flush().map_err(|e| csv_failure(out, e))?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(Failure::new(
                    EXIT_CHECK,
                    format!("{failed} of {} trend checks failed", outcomes.len()),
                ));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("junction: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
