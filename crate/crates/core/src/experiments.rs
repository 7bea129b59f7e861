//! Experiment suites: a seeded run matrix over problems and contenders,
//! aggregated into Ave/Std, Wilcoxon p-values, Friedman mean ranks and
//! win/tie/loss counts, then written as CSV and JSON.
//!
//! Run `r` of every contender on every problem uses seed `seed + r`, so
//! contenders are compared on paired seeds and no seed repeats within a
//! contender's runs. Every job is independent, which makes the output
//! identical for any thread count.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanisms::MutationParams;
use crate::objective::Objective;
use crate::pathplan2d;
use crate::pathplan3d;
use crate::registry::{self, Family, Problem, ProblemOptions};
use crate::run::{run, RunConfig, RunResult, TraceOptions, Variant};
use crate::stats::{self, DEFAULT_ALPHA};

/// Violation tolerance under which an engineering solution counts as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Sensitivity,
    Ablation,
    Qualitative,
    BenchmarkComparison,
    Pp2d,
    Pp3d,
    Engineering,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Sensitivity => "sensitivity",
            Suite::Ablation => "ablation",
            Suite::Qualitative => "qualitative",
            Suite::BenchmarkComparison => "benchmark_comparison",
            Suite::Pp2d => "pp2d",
            Suite::Pp3d => "pp3d",
            Suite::Engineering => "engineering",
        }
    }

    pub fn default_problems(self) -> Vec<String> {
        let all_f = || (1..=23).map(|i| format!("F{i}")).collect();
        match self {
            Suite::Sensitivity | Suite::Ablation | Suite::BenchmarkComparison => all_f(),
            Suite::Qualitative => ["F1", "F5", "F8", "F20"].map(String::from).to_vec(),
            Suite::Pp2d => pathplan2d::bundled_map_names()
                .into_iter()
                .map(String::from)
                .collect(),
            Suite::Pp3d => ["Scene1", "Scene2"].map(String::from).to_vec(),
            Suite::Engineering => crate::engineering::EngineeringId::ALL
                .iter()
                .map(|id| id.name().to_string())
                .chain(std::iter::once("SawmillDemand".to_string()))
                .collect(),
        }
    }

    pub fn default_variants(self) -> Vec<Variant> {
        match self {
            Suite::Sensitivity | Suite::Qualitative => vec![Variant::Cicdwoa],
            Suite::Ablation => Variant::ABLATION.to_vec(),
            _ => vec![Variant::Woa, Variant::Cicdwoa],
        }
    }
}

/// The nine `(s1, s2)` pairs of the sensitivity grid, `Comb1`..`Comb9`.
pub fn default_combinations() -> Vec<[f64; 2]> {
    let grid = [15.0, 20.0, 25.0];
    grid.iter()
        .flat_map(|&s1| grid.iter().map(move |&s2| [s1, s2]))
        .collect()
}

fn default_runs() -> usize {
    30
}
fn default_n() -> usize {
    30
}
fn default_t() -> usize {
    500
}
fn default_s1() -> f64 {
    20.0
}
fn default_s2() -> f64 {
    25.0
}
fn default_b() -> f64 {
    1.0
}
fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}
fn default_output() -> PathBuf {
    PathBuf::from("results")
}

/// One experiment description. Only `suite` is required; empty `problems`
/// and `variants` fall back to the suite's defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub suite: Suite,
    #[serde(default)]
    pub problems: Vec<String>,
    #[serde(default)]
    pub variants: Vec<Variant>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(rename = "N", default = "default_n")]
    pub n: usize,
    #[serde(rename = "T", default = "default_t")]
    pub iterations: usize,
    /// Base seed; run `r` uses `seed + r`.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_s1")]
    pub s1: f64,
    #[serde(default = "default_s2")]
    pub s2: f64,
    #[serde(default = "default_b")]
    pub b: f64,
    #[serde(default)]
    pub mutation: MutationParams,
    /// Sensitivity grid; empty means the default 3 x 3 grid.
    #[serde(default)]
    pub combinations: Vec<[f64; 2]>,
    #[serde(default)]
    pub problem_options: ProblemOptions,
    /// Significance level of the win/tie/loss column.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Worker threads; `None` uses every available core.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Render SVG convergence charts after the suite (CLI only).
    #[serde(default)]
    pub chart: bool,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            problems: Vec::new(),
            variants: Vec::new(),
            runs: default_runs(),
            n: default_n(),
            iterations: default_t(),
            seed: 0,
            s1: default_s1(),
            s2: default_s2(),
            b: default_b(),
            mutation: MutationParams::default(),
            combinations: Vec::new(),
            problem_options: ProblemOptions::default(),
            alpha: default_alpha(),
            threads: None,
            output: default_output(),
            chart: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParameter("runs must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        if self.seed.checked_add(self.runs as u64).is_none() {
            return Err(Error::InvalidParameter("seed + runs overflows u64".into()));
        }
        self.template(Variant::Cicdwoa, self.s1, self.s2).validate()
    }

    pub fn problem_names(&self) -> Vec<String> {
        if self.problems.is_empty() {
            self.suite.default_problems()
        } else {
            self.problems.clone()
        }
    }

    fn template(&self, variant: Variant, s1: f64, s2: f64) -> RunConfig {
        RunConfig {
            variant,
            n: self.n,
            iterations: self.iterations,
            s1,
            s2,
            b: self.b,
            seed: self.seed,
            trace: TraceOptions::default(),
            mutation: self.mutation,
            init: None,
        }
    }

    /// The labelled run configurations compared by this suite.
    pub fn contenders(&self) -> Vec<Contender> {
        let variants = if self.variants.is_empty() {
            self.suite.default_variants()
        } else {
            self.variants.clone()
        };
        if self.suite == Suite::Sensitivity {
            let combos = if self.combinations.is_empty() {
                default_combinations()
            } else {
                self.combinations.clone()
            };
            return combos
                .iter()
                .enumerate()
                .map(|(i, &[s1, s2])| Contender {
                    label: format!("Comb{}", i + 1),
                    config: self.template(variants[0], s1, s2),
                })
                .collect();
        }
        variants
            .into_iter()
            .map(|v| Contender {
                label: v.name().to_string(),
                config: self.template(v, self.s1, self.s2),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contender {
    pub label: String,
    pub config: RunConfig,
}

/// All runs of one contender on one problem.
#[derive(Debug, Clone)]
pub struct Cell {
    pub label: String,
    pub seeds: Vec<u64>,
    pub results: Vec<RunResult>,
}

impl Cell {
    pub fn best_values(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.best_fitness).collect()
    }

    /// Index of the run with the lowest best fitness (first on ties).
    pub fn best_run(&self) -> usize {
        let mut best = 0;
        for (i, r) in self.results.iter().enumerate() {
            if r.best_fitness < self.results[best].best_fitness {
                best = i;
            }
        }
        best
    }
}

pub struct ProblemOutcome {
    pub problem: Problem,
    /// One cell per contender, in contender order.
    pub cells: Vec<Cell>,
}

pub struct SuiteOutcome {
    pub spec: SuiteSpec,
    pub contenders: Vec<Contender>,
    pub problems: Vec<ProblemOutcome>,
}

fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

/// Runs every `(problem, contender, run)` job. Traces are recorded for the
/// first run of the qualitative suite only.
pub fn execute(spec: &SuiteSpec) -> Result<SuiteOutcome> {
    spec.validate()?;
    let problems: Vec<Problem> = spec
        .problem_names()
        .iter()
        .map(|n| registry::resolve(n, &spec.problem_options))
        .collect::<Result<_>>()?;
    let contenders = spec.contenders();
    let jobs: Vec<(usize, usize, usize)> = (0..problems.len())
        .flat_map(|p| {
            (0..contenders.len()).flat_map(move |c| (0..spec.runs).map(move |r| (p, c, r)))
        })
        .collect();
    info!(
        "{}: {} problems x {} contenders x {} runs",
        spec.suite.name(),
        problems.len(),
        contenders.len(),
        spec.runs
    );

    let pool = build_pool(spec.threads)?;
    let results: Vec<RunResult> = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, c, r)| {
                let mut cfg = contenders[c].config.clone();
                cfg.seed = spec.seed + r as u64;
                if spec.suite == Suite::Qualitative && r == 0 {
                    cfg.trace = TraceOptions::all();
                }
                run(&problems[p], &cfg)
            })
            .collect::<Result<_>>()
    })?;

    let mut results = results.into_iter();
    let mut outcomes = Vec::with_capacity(problems.len());
    for problem in problems {
        let cells = contenders
            .iter()
            .map(|c| Cell {
                label: c.label.clone(),
                seeds: (0..spec.runs as u64).map(|r| spec.seed + r).collect(),
                results: results.by_ref().take(spec.runs).collect(),
            })
            .collect();
        outcomes.push(ProblemOutcome { problem, cells });
    }
    Ok(SuiteOutcome {
        spec: spec.clone(),
        contenders,
        problems: outcomes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContenderSummary {
    pub label: String,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    /// Wilcoxon p against the reference contender (absent for the reference).
    pub p_value: Option<f64>,
    /// Runs whose best solution is feasible, for constrained and path problems.
    pub feasible_runs: Option<usize>,
    pub friedman: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSummary {
    pub problem: String,
    pub family: Family,
    pub dimension: usize,
    pub reference: Option<f64>,
    pub contenders: Vec<ContenderSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanSummary {
    pub contenders: Vec<String>,
    /// `per_problem[problem][contender]`.
    pub per_problem: Vec<Vec<f64>>,
    pub average: Vec<f64>,
    pub rank: Vec<usize>,
    pub best: String,
}

/// Counts from the reference's point of view: `wins` are problems where
/// the reference is significantly better than `against`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WtlRow {
    pub against: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub timestamp: String,
    pub spec: SuiteSpec,
    pub reference: Option<String>,
    pub problems: Vec<ProblemSummary>,
    pub friedman: Option<FriedmanSummary>,
    pub win_tie_loss: Vec<WtlRow>,
}

/// Whether the best solution of a run is feasible, for families where that
/// is meaningful.
pub fn is_feasible(problem: &Problem, x: &[f64]) -> Option<bool> {
    match problem {
        Problem::Benchmark(_) => None,
        Problem::Engineering(e) => Some(
            e.evaluate_full(x)
                .map(|ev| ev.violations.iter().all(|&v| v <= FEASIBILITY_TOL))
                .unwrap_or(false),
        ),
        Problem::Path2d(p) => Some(
            p.decode(x)
                .map(|path| pathplan2d::collision_count(&path, p.map()) == 0)
                .unwrap_or(false),
        ),
        Problem::Path3d(p) => Some(
            p.decode(x)
                .map(|t| pathplan3d::obstacle_penalty(&t, p.scene()) == 0.0)
                .unwrap_or(false),
        ),
    }
}

/// The contender other rows are tested against: CICDWOA when present,
/// otherwise none (sensitivity compares combinations only by rank).
fn reference_index(outcome: &SuiteOutcome) -> Option<usize> {
    if outcome.spec.suite == Suite::Sensitivity {
        return None;
    }
    outcome
        .contenders
        .iter()
        .position(|c| c.label == Variant::Cicdwoa.name())
}

pub fn summarize(outcome: &SuiteOutcome, timestamp: impl Into<String>) -> Result<SuiteReport> {
    let k = outcome.contenders.len();
    let reference = reference_index(outcome);
    let values: Vec<Vec<Vec<f64>>> = (0..k)
        .map(|c| {
            outcome
                .problems
                .iter()
                .map(|p| p.cells[c].best_values())
                .collect()
        })
        .collect();
    let friedman = if k >= 2 {
        Some(stats::friedman_mean_ranks(&values)?)
    } else {
        None
    };

    let mut problems = Vec::with_capacity(outcome.problems.len());
    for (pi, po) in outcome.problems.iter().enumerate() {
        let mut rows = Vec::with_capacity(k);
        for (c, cell) in po.cells.iter().enumerate() {
            let v = cell.best_values();
            let (mean, std) = stats::ave_std(&v);
            let p_value = match reference {
                Some(r) if r != c => Some(stats::wilcoxon_rank_sum(&values[r][pi], &v)?),
                _ => None,
            };
            let feasible_runs = cell
                .results
                .iter()
                .map(|r| is_feasible(&po.problem, &r.best_position))
                .try_fold(0usize, |acc, f| f.map(|ok| acc + ok as usize));
            rows.push(ContenderSummary {
                label: cell.label.clone(),
                mean,
                std,
                best: v.iter().copied().fold(f64::INFINITY, f64::min),
                worst: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                p_value,
                feasible_runs,
                friedman: friedman.as_ref().map(|f| f.per_problem[pi][c]),
            });
        }
        problems.push(ProblemSummary {
            problem: po.problem.name().to_string(),
            family: po.problem.family(),
            dimension: po.problem.dim(),
            reference: po.problem.reference(),
            contenders: rows,
        });
    }

    let mut win_tie_loss = Vec::new();
    if let Some(r) = reference {
        for c in (0..k).filter(|&c| c != r) {
            let p: Vec<f64> = problems
                .iter()
                .map(|s| s.contenders[c].p_value.unwrap_or(1.0))
                .collect();
            let better: Vec<bool> = problems
                .iter()
                .map(|s| s.contenders[r].mean < s.contenders[c].mean)
                .collect();
            let wtl = stats::wtl_classify(&p, &better, outcome.spec.alpha)?;
            win_tie_loss.push(WtlRow {
                against: outcome.contenders[c].label.clone(),
                wins: wtl.wins,
                ties: wtl.ties,
                losses: wtl.losses,
            });
        }
    }

    let labels: Vec<String> = outcome.contenders.iter().map(|c| c.label.clone()).collect();
    let friedman = friedman.map(|f| {
        let best = (0..k)
            .min_by(|&a, &b| f.average[a].total_cmp(&f.average[b]))
            .map(|i| labels[i].clone())
            .unwrap_or_default();
        FriedmanSummary {
            contenders: labels.clone(),
            per_problem: f.per_problem,
            average: f.average,
            rank: f.rank,
            best,
        }
    });

    Ok(SuiteReport {
        suite: outcome.spec.suite,
        timestamp: timestamp.into(),
        spec: outcome.spec.clone(),
        reference: reference.map(|r| labels[r].clone()),
        problems,
        friedman,
        win_tie_loss,
    })
}

/// Formats a value with 17 significant digits, enough to round-trip.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_csv(
    path: &Path,
    header: &[String],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// File-system-safe form of a label.
fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn write_cell(dir: &Path, problem: &Problem, cell: &Cell) -> Result<()> {
    let stem = file_stem(&cell.label);
    let runs = cell.results.len();
    let iterations = cell.results.first().map_or(0, |r| r.convergence.len());

    let mut header = vec!["iteration".to_string()];
    header.extend((0..runs).map(|r| format!("run_{r}")));
    header.push("mean".into());
    write_csv(
        &dir.join(format!("{stem}.csv")),
        &header,
        (0..iterations).map(|t| {
            let mut row = vec![(t + 1).to_string()];
            let mut sum = 0.0;
            for r in &cell.results {
                row.push(fmt_num(r.convergence[t]));
                sum += r.convergence[t];
            }
            row.push(fmt_num(sum / runs as f64));
            row
        }),
    )?;

    let dim = problem.dim();
    let mut header: Vec<String> = ["run", "seed", "best_fitness", "feasible"]
        .map(String::from)
        .to_vec();
    header.extend((0..dim).map(|d| format!("x{d}")));
    write_csv(
        &dir.join(format!("{stem}.best.csv")),
        &header,
        cell.results
            .iter()
            .zip(&cell.seeds)
            .enumerate()
            .map(|(i, (r, seed))| {
                let mut row = vec![
                    i.to_string(),
                    seed.to_string(),
                    fmt_num(r.best_fitness),
                    is_feasible(problem, &r.best_position).map_or(String::new(), |f| f.to_string()),
                ];
                row.extend(r.best_position.iter().map(|&v| fmt_num(v)));
                row
            }),
    )?;

    let best = &cell.results[cell.best_run()];
    match problem {
        Problem::Path2d(p) => {
            let path = p.decode(&best.best_position)?;
            pathplan2d::write_path_csv(
                &path,
                fs::File::create(dir.join(format!("{stem}.path.csv")))?,
            )?;
        }
        Problem::Path3d(p) => {
            let traj = p.decode(&best.best_position)?;
            pathplan3d::write_trajectory_csv(
                &traj,
                fs::File::create(dir.join(format!("{stem}.trajectory.csv")))?,
            )?;
        }
        _ => {}
    }

    let traced = &cell.results[0];
    if let Some(history) = &traced.history {
        let mut header: Vec<String> = ["iteration", "agent"].map(String::from).to_vec();
        header.extend((0..dim).map(|d| format!("x{d}")));
        write_csv(
            &dir.join(format!("{stem}.history.csv")),
            &header,
            history.iter().map(|h| {
                let mut row = vec![h.iteration.to_string(), h.agent.to_string()];
                row.extend(h.position.iter().map(|&v| fmt_num(v)));
                row
            }),
        )?;
    }
    if traced.diversity.is_some() || traced.exploration.is_some() || traced.trajectory.is_some() {
        let header = [
            "iteration",
            "best",
            "diversity",
            "exploration",
            "exploitation",
            "agent0_x0",
        ]
        .map(String::from)
        .to_vec();
        let opt =
            |v: &Option<Vec<f64>>, t: usize| v.as_ref().map_or(String::new(), |c| fmt_num(c[t]));
        write_csv(
            &dir.join(format!("{stem}.traces.csv")),
            &header,
            (0..traced.convergence.len()).map(|t| {
                vec![
                    (t + 1).to_string(),
                    fmt_num(traced.convergence[t]),
                    opt(&traced.diversity, t),
                    opt(&traced.exploration, t),
                    opt(&traced.exploitation, t),
                    opt(&traced.trajectory, t),
                ]
            }),
        )?;
    }
    Ok(())
}

/// Writes per-problem CSVs plus `summary.json`, `summary.csv` and, when
/// ranks exist, `friedman.csv` under `<root>/<suite>/`. Returns that
/// directory.
pub fn write_outputs(outcome: &SuiteOutcome, report: &SuiteReport, root: &Path) -> Result<PathBuf> {
    let suite_dir = root.join(outcome.spec.suite.name());
    for po in &outcome.problems {
        let dir = suite_dir.join(file_stem(po.problem.name()));
        fs::create_dir_all(&dir)?;
        for cell in &po.cells {
            write_cell(&dir, &po.problem, cell)?;
        }
    }
    fs::create_dir_all(&suite_dir)?;

    let mut json = fs::File::create(suite_dir.join("summary.json"))?;
    serde_json::to_writer_pretty(&mut json, report)?;
    json.write_all(b"\n")?;

    let header = [
        "problem",
        "contender",
        "mean",
        "std",
        "best",
        "worst",
        "p_value",
        "friedman",
        "feasible_runs",
    ]
    .map(String::from)
    .to_vec();
    let opt = |v: Option<f64>| v.map_or(String::new(), fmt_num);
    write_csv(
        &suite_dir.join("summary.csv"),
        &header,
        report.problems.iter().flat_map(|p| {
            p.contenders.iter().map(move |c| {
                vec![
                    p.problem.clone(),
                    c.label.clone(),
                    fmt_num(c.mean),
                    fmt_num(c.std),
                    fmt_num(c.best),
                    fmt_num(c.worst),
                    opt(c.p_value),
                    opt(c.friedman),
                    c.feasible_runs.map_or(String::new(), |n| n.to_string()),
                ]
            })
        }),
    )?;

    if let Some(f) = &report.friedman {
        let mut header = vec!["problem".to_string()];
        header.extend(f.contenders.iter().cloned());
        let mut rows: Vec<Vec<String>> = report
            .problems
            .iter()
            .zip(&f.per_problem)
            .map(|(p, ranks)| {
                std::iter::once(p.problem.clone())
                    .chain(ranks.iter().map(|r| format!("{r:.4}")))
                    .collect()
            })
            .collect();
        rows.push(
            std::iter::once("Average".to_string())
                .chain(f.average.iter().map(|r| format!("{r:.4}")))
                .collect(),
        );
        rows.push(
            std::iter::once("Rank".to_string())
                .chain(f.rank.iter().map(|r| r.to_string()))
                .collect(),
        );
        write_csv(&suite_dir.join("friedman.csv"), &header, rows)?;
    }
    Ok(suite_dir)
}

/// Executes a suite, writes its files under `spec.output` and returns the
/// report. The report's timestamp is the only nondeterministic output.
pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteReport> {
    let outcome = execute(spec)?;
    let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let report = summarize(&outcome, stamp)?;
    write_outputs(&outcome, &report, &spec.output)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteSpec {
        SuiteSpec {
            runs: 3,
            iterations: 20,
            n: 10,
            threads: Some(1),
            ..SuiteSpec::new(suite)
        }
    }

    #[test]
    fn spec_parsing_is_strict() {
        let ok = r#"{"suite":"benchmark_comparison","problems":["F1"],"variants":["CICDWOA"],"runs":1,"N":30,"T":50}"#;
        let spec: SuiteSpec = serde_json::from_str(ok).unwrap();
        assert_eq!(spec.runs, 1);
        assert_eq!(spec.iterations, 50);
        assert_eq!(spec.s2, 25.0);
        let bad = r#"{"suite":"ablation","foo":1}"#;
        assert!(serde_json::from_str::<SuiteSpec>(bad).is_err());
        assert!(serde_json::from_str::<SuiteSpec>(r#"{"runs":3}"#).is_err());
    }

    #[test]
    fn sensitivity_grid_order() {
        let c = SuiteSpec::new(Suite::Sensitivity).contenders();
        assert_eq!(c.len(), 9);
        assert_eq!(c[5].label, "Comb6");
        assert_eq!((c[5].config.s1, c[5].config.s2), (20.0, 25.0));
        assert_eq!((c[0].config.s1, c[0].config.s2), (15.0, 15.0));
        assert_eq!((c[8].config.s1, c[8].config.s2), (25.0, 25.0));
    }

    #[test]
    fn validation() {
        let mut s = small(Suite::Ablation);
        s.runs = 0;
        assert!(s.validate().is_err());
        let mut s = small(Suite::Ablation);
        s.alpha = 1.0;
        assert!(s.validate().is_err());
        let mut s = small(Suite::Ablation);
        s.problems = vec!["F99".into()];
        assert!(matches!(execute(&s), Err(Error::UnknownProblem(_))));
    }

    #[test]
    fn comparison_report_shape() {
        let mut s = small(Suite::BenchmarkComparison);
        s.problems = vec!["F1".into(), "F9".into(), "ThreeBarTruss".into()];
        let out = execute(&s).unwrap();
        let rep = summarize(&out, "t").unwrap();
        assert_eq!(rep.reference.as_deref(), Some("CICDWOA"));
        assert_eq!(rep.problems.len(), 3);
        let woa = &rep.problems[0].contenders[0];
        assert!(woa.p_value.is_some());
        assert!(rep.problems[0].contenders[1].p_value.is_none());
        assert_eq!(
            rep.problems[2].contenders[0].feasible_runs.map(|n| n <= 3),
            Some(true)
        );
        assert_eq!(rep.win_tie_loss.len(), 1);
        let w = &rep.win_tie_loss[0];
        assert_eq!(w.wins + w.ties + w.losses, 3);
        let f = rep.friedman.unwrap();
        for row in &f.per_problem {
            assert!((row.iter().sum::<f64>() - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let mut a = small(Suite::Ablation);
        a.problems = vec!["F5".into(), "F15".into()];
        let mut b = a.clone();
        b.threads = Some(3);
        let ra = execute(&a).unwrap();
        let rb = execute(&b).unwrap();
        for (pa, pb) in ra.problems.iter().zip(&rb.problems) {
            for (ca, cb) in pa.cells.iter().zip(&pb.cells) {
                assert_eq!(ca.results, cb.results);
            }
        }
    }

    #[test]
    fn files_are_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = small(Suite::Qualitative);
        s.problems = vec!["F1".into(), "Map1".into()];
        let render = |sub: &str| {
            let mut spec = s.clone();
            spec.output = dir.path().join(sub);
            let out = execute(&spec).unwrap();
            let rep = summarize(&out, "fixed").unwrap();
            write_outputs(&out, &rep, &spec.output).unwrap()
        };
        let a = render("a");
        let b = render("b");
        for rel in [
            "F1/CICDWOA.csv",
            "F1/CICDWOA.best.csv",
            "F1/CICDWOA.history.csv",
            "F1/CICDWOA.traces.csv",
            "Map1/CICDWOA.path.csv",
            "summary.csv",
        ] {
            let x = fs::read(a.join(rel)).unwrap();
            let y = fs::read(b.join(rel)).unwrap();
            assert_eq!(x, y, "{rel}");
        }
        let text = fs::read_to_string(a.join("F1/CICDWOA.csv")).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "iteration,run_0,run_1,run_2,mean");
        assert_eq!(text.lines().count(), 21);
        // Output paths differ, so compare the JSON with that field removed.
        let strip = |p: &Path| {
            let mut v: serde_json::Value =
                serde_json::from_slice(&fs::read(p.join("summary.json")).unwrap()).unwrap();
            v["spec"]["output"] = serde_json::Value::Null;
            v
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn sensitivity_has_no_reference_and_all_tied_rows_are_five() {
        let mut s = small(Suite::Sensitivity);
        s.problems = vec!["F1".into()];
        s.iterations = 500;
        s.n = 30;
        let out = execute(&s).unwrap();
        let rep = summarize(&out, "t").unwrap();
        assert!(rep.reference.is_none());
        assert!(rep.win_tie_loss.is_empty());
        let f = rep.friedman.unwrap();
        assert_eq!(f.per_problem[0], vec![5.0; 9]);
    }
}
