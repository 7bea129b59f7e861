//! Whale optimization (WOA) and its CICDWOA extension, with the objectives
//! and statistics needed to compare them.
//!
//! ```
//! use cicdwoa::{run, Benchmark, RunConfig, Variant};
//!
//! let sphere = Benchmark::with_dimension(1, 5).unwrap();
//! let config = RunConfig { iterations: 50, ..RunConfig::new(Variant::Cicdwoa, 7) };
//! let result = run(&sphere, &config).unwrap();
//! assert!(result.best_fitness < 1e-6);
//! ```

pub mod benchfuncs;
pub mod bounds;
pub mod engineering;
pub mod error;
pub mod experiments;
pub mod init;
pub mod mechanisms;
pub mod objective;
pub mod pathplan2d;
pub mod pathplan3d;
pub mod population;
pub mod registry;
pub mod rng;
pub mod run;
pub mod stats;
pub mod woa;

pub use benchfuncs::{Benchmark, BenchmarkSpec, Modality};
pub use bounds::{clamp_to_bounds, Bounds};
pub use engineering::{EngineeringId, EngineeringProblem, Evaluation, ModelOptions};
pub use error::{Error, Result};
pub use experiments::{run_suite, Suite, SuiteReport, SuiteSpec};
pub use mechanisms::{CicdwoaParams, MechanismFlags, MutationParams};
pub use objective::{FnObjective, Objective};
pub use pathplan2d::{GridMap, PathProblem};
pub use pathplan3d::{Obstacle, Scene3D, UavProblem, Weights};
pub use population::{diversity, exploration_ratio, population_mean, Agent, Population};
pub use registry::{resolve, Family, Problem, ProblemOptions};
pub use rng::RngStream;
pub use run::{run, HistoryPoint, InitKind, RunConfig, RunResult, TraceOptions, Variant};
