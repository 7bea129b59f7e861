//! `cicdwoa` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 objective or optimizer failure.

mod chart;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cicdwoa::experiments::{self, SuiteReport, SuiteSpec};
use cicdwoa::registry::{self, ProblemOptions};
use cicdwoa::Error;
use clap::{Parser, Subcommand};

/// Environment variable capping the number of worker threads.
const THREADS_ENV: &str = "CICDWOA_THREADS";

#[derive(Parser)]
#[command(name = "cicdwoa", version, about = "Whale optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every benchmark, engineering problem, map and scene.
    List {
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run the suite described by a JSON config file.
    Run {
        config: PathBuf,
        /// Override the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's output directory.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the config's thread count.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Render one SVG convergence chart per problem directory under DIR.
    Chart { dir: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Config(String),
    Objective(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Objective(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Config(m) | Failure::Objective(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::UnknownProblem(_) | Error::Json(_) => {
                Failure::Config(e.to_string())
            }
            Error::Io(_) | Error::Csv(_) => Failure::Io(e.to_string()),
            Error::DimensionMismatch { .. }
            | Error::EmptyPopulation
            | Error::NonFiniteFitness { .. } => Failure::Objective(e.to_string()),
        }
    }
}

/// The smaller of the requested thread count and the environment cap.
fn effective_threads(
    requested: Option<usize>,
    env: Option<&str>,
) -> Result<Option<usize>, Failure> {
    let cap = match env.map(str::trim).filter(|s| !s.is_empty()) {
        None => None,
        Some(s) => match s.parse::<usize>() {
            Ok(n) if n >= 1 => Some(n),
            _ => {
                return Err(Failure::Config(format!(
                    "{THREADS_ENV} must be a positive integer, got {s:?}"
                )))
            }
        },
    };
    Ok(match (requested, cap) {
        (Some(r), Some(c)) => Some(r.min(c)),
        (r, c) => r.or(c),
    })
}

fn load_config(path: &Path) -> Result<SuiteSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn cmd_list(json: bool) -> Result<(), Failure> {
    let entries = registry::catalog(&ProblemOptions::default());
    if json {
        let text =
            serde_json::to_string_pretty(&entries).map_err(|e| Failure::Io(e.to_string()))?;
        println!("{text}");
        return Ok(());
    }
    println!(
        "{:<12} {:<16} {:>4}  {:>16}  description",
        "family", "name", "dim", "reference"
    );
    for e in entries {
        let family = serde_json::to_value(e.family)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let reference = e.reference.map_or("-".to_string(), |r| format!("{r:.6}"));
        println!(
            "{:<12} {:<16} {:>4}  {:>16}  {}",
            family, e.name, e.dimension, reference, e.description
        );
    }
    Ok(())
}

fn print_report(report: &SuiteReport, dir: &Path) {
    println!("suite {} -> {}", report.suite.name(), dir.display());
    for p in &report.problems {
        for c in &p.contenders {
            let p_value = c.p_value.map_or(String::new(), |v| format!("  p={v:.3e}"));
            let feasible = c.feasible_runs.map_or(String::new(), |n| {
                format!("  feasible={n}/{}", report.spec.runs)
            });
            println!(
                "  {:<14} {:<10} mean={:.6e} std={:.3e}{p_value}{feasible}",
                p.problem, c.label, c.mean, c.std
            );
        }
    }
    if let Some(f) = &report.friedman {
        println!("Friedman average ranks:");
        for ((label, avg), rank) in f.contenders.iter().zip(&f.average).zip(&f.rank) {
            println!("  {label:<10} {avg:.4} (rank {rank})");
        }
    }
    for w in &report.win_tie_loss {
        let reference = report.reference.as_deref().unwrap_or("reference");
        println!(
            "  {reference} vs {}: +{}/={}/-{}",
            w.against, w.wins, w.ties, w.losses
        );
    }
}

fn cmd_run(
    config: &Path,
    seed: Option<u64>,
    output: Option<PathBuf>,
    threads: Option<usize>,
) -> Result<(), Failure> {
    let mut spec = load_config(config)?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(o) = output {
        spec.output = o;
    }
    let env = std::env::var(THREADS_ENV).ok();
    spec.threads = effective_threads(threads.or(spec.threads), env.as_deref())?;
    spec.validate()?;

    let report = experiments::run_suite(&spec)?;
    let dir = spec.output.join(spec.suite.name());
    print_report(&report, &dir);
    if spec.chart {
        let charts = chart::chart_dir(&dir).map_err(|e| Failure::Io(e.to_string()))?;
        println!("wrote {} charts", charts.len());
    }
    Ok(())
}

fn cmd_chart(dir: &Path) -> Result<(), Failure> {
    if !dir.is_dir() {
        return Err(Failure::Io(format!("{} is not a directory", dir.display())));
    }
    let written = chart::chart_dir(dir).map_err(|e| Failure::Io(e.to_string()))?;
    for path in &written {
        println!("{}", path.display());
    }
    println!("wrote {} charts", written.len());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { json } => cmd_list(json),
        Command::Run {
            config,
            seed,
            output,
            threads,
        } => cmd_run(&config, seed, output, threads),
        Command::Chart { dir } => cmd_chart(&dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_cap() {
        assert_eq!(effective_threads(None, None).unwrap(), None);
        assert_eq!(effective_threads(Some(8), Some("2")).unwrap(), Some(2));
        assert_eq!(effective_threads(Some(1), Some("4")).unwrap(), Some(1));
        assert_eq!(effective_threads(None, Some("3")).unwrap(), Some(3));
        assert_eq!(effective_threads(None, Some("")).unwrap(), None);
        assert!(effective_threads(None, Some("0")).is_err());
        assert!(effective_threads(None, Some("x")).is_err());
    }

    #[test]
    fn error_classes() {
        assert_eq!(Failure::from(Error::UnknownProblem("x".into())).code(), 2);
        let nf = Error::NonFiniteFitness {
            iteration: 0,
            agent: 0,
            value: f64::NAN,
        };
        assert_eq!(Failure::from(nf).code(), 3);
    }
}
