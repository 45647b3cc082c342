//! `osc-decay`: Mittag-Leffler values, Newton invariants and decay experiments.
//!
//! Exit codes: 0 pass, 1 verdict fail, 2 usage or config error, 3 analysis
//! refused (phase not normalized, unbounded principal face).

mod commands;
mod config;
mod document;

use clap::{Args, Parser, Subcommand};
use commands::{Failure, Outcome};
use config::ExperimentConfig;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "osc-decay", version, about = "Oscillatory integrals with Mittag-Leffler kernels: evaluation and decay experiments")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "OSC_DECAY_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate E_{α,β}(z).
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Complex argument such as `1+0i` or `0+1e6i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Relative tolerance in [1e-14, 1e-6].
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        /// Also print |E(it)|·(1+|t|) for z = it.
        #[arg(long)]
        bound_ratio: bool,
    },
    /// Newton polyhedron invariants of a phase.
    Newton {
        phase: String,
        /// The coordinates are not known to be adapted; m is provisional.
        #[arg(long)]
        not_adapted: bool,
    },
    /// One integral at `lambda` with the chosen kernel.
    Integrate(ExperimentArgs),
    /// λ-sweep against the decay bound.
    Sweep(ExperimentArgs),
    /// ε-sweep of the sublevel measure.
    Sublevel(ExperimentArgs),
    /// The non-degenerate case x² ± y² split at λ|f| = level.
    Morse(ExperimentArgs),
    /// Re-read a CSV written by this tool and recompute its verdict.
    Report { path: PathBuf },
}

/// Config file plus per-key overrides.
#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Flat `key = value` file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the CSV here; otherwise it goes to stdout and the verdict to stderr.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Extra `key=value` overrides, applied last.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    phase: Option<String>,
    #[arg(long)]
    amplitude: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    lambda_min: Option<String>,
    #[arg(long)]
    lambda_max: Option<String>,
    #[arg(long)]
    lambda_points: Option<String>,
    #[arg(long)]
    epsilon_min: Option<String>,
    #[arg(long)]
    epsilon_max: Option<String>,
    #[arg(long)]
    epsilon_points: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    rel_tol: Option<String>,
    #[arg(long)]
    adapted: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    level: Option<String>,
}

impl ExperimentArgs {
    fn resolve(&self) -> Result<ExperimentConfig, Failure> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path).map_err(Failure::Usage)?;
        }
        let flags = [
            ("phase", &self.phase),
            ("amplitude", &self.amplitude),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("kernel", &self.kernel),
            ("lambda", &self.lambda),
            ("lambda_min", &self.lambda_min),
            ("lambda_max", &self.lambda_max),
            ("lambda_points", &self.lambda_points),
            ("epsilon_min", &self.epsilon_min),
            ("epsilon_max", &self.epsilon_max),
            ("epsilon_points", &self.epsilon_points),
            ("rho", &self.rho),
            ("rel_tol", &self.rel_tol),
            ("adapted", &self.adapted),
            ("sign", &self.sign),
            ("level", &self.level),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v).map_err(Failure::Usage)?;
            }
        }
        for kv in &self.set {
            let (k, v) = kv.split_once('=').ok_or_else(|| Failure::Usage(format!("--set expects key=value, got {kv:?}")))?;
            cfg.set(k.trim(), v).map_err(Failure::Usage)?;
        }
        Ok(cfg)
    }
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        _ => Ok(f()),
    }
}

fn emit(outcome: Outcome, output: Option<&PathBuf>) -> Result<u8, Failure> {
    let text = outcome.document.render();
    let verdict = outcome.document.verdict.to_string();
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            print!("{verdict}");
        }
        None => {
            print!("{text}");
            eprint!("{verdict}");
        }
    }
    Ok(outcome.exit)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Ml { alpha, beta, z, tol, bound_ratio } => {
            print!("{}", commands::ml(alpha, beta, &z, tol, bound_ratio)?);
            Ok(0)
        }
        Command::Newton { phase, not_adapted } => {
            let out = commands::newton(&phase, !not_adapted)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.text);
            Ok(0)
        }
        Command::Report { path } => {
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let r = commands::report(&text)?;
            print!("{}", r.verdict);
            println!("reproduced={}", r.reproduced);
            if !r.reproduced {
                eprintln!("warning: recomputed {} verdict differs from the stored one", r.command);
            }
            Ok(r.exit)
        }
        Command::Integrate(args) => experiment(cli.threads, &args, commands::integrate),
        Command::Sweep(args) => experiment(cli.threads, &args, commands::sweep),
        Command::Sublevel(args) => experiment(cli.threads, &args, commands::sublevel),
        Command::Morse(args) => experiment(cli.threads, &args, commands::morse),
    }
}

fn experiment(
    threads: Option<usize>,
    args: &ExperimentArgs,
    cmd: fn(&ExperimentConfig) -> Result<Outcome, Failure>,
) -> Result<u8, Failure> {
    let cfg = args.resolve()?;
    let outcome = with_threads(threads, || cmd(&cfg))??;
    emit(outcome, args.output.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(f) => {
            let kind = if f.code() == 3 { "refused" } else { "error" };
            eprintln!("{kind}: {}", f.message());
            f.code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
