//! Name-based lookup of every bundled problem.
//!
//! Names are case-insensitive: `F1`..`F23`, the engineering names
//! (`ThreeBarTruss`, ..., plus `SawmillDemand` for the demand-as-`>=`
//! variant), the grid maps (`Empty`, `Map1`..`Map4`) and the UAV scenes
//! (`EmptyScene`, `Scene1`, `Scene2`).

use serde::{Deserialize, Serialize};

use crate::benchfuncs::{self, Benchmark};
use crate::bounds::Bounds;
use crate::engineering::{EngineeringId, EngineeringProblem, ModelOptions};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::pathplan2d::{self, PathProblem};
use crate::pathplan3d::{self, UavProblem, Weights};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Benchmark,
    Engineering,
    Path2d,
    Path3d,
}

/// Encoding choices for the path problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProblemOptions {
    /// Interior waypoints `K` of a grid path.
    pub waypoints_2d: usize,
    /// Waypoints `g` of a UAV trajectory, start and goal included.
    pub waypoints_3d: usize,
    pub weights: Weights,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        Self {
            waypoints_2d: pathplan2d::DEFAULT_WAYPOINTS,
            waypoints_3d: pathplan3d::DEFAULT_WAYPOINTS,
            weights: Weights::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Problem {
    Benchmark(Benchmark),
    Engineering(EngineeringProblem),
    Path2d(PathProblem),
    Path3d(UavProblem),
}

impl Problem {
    pub fn family(&self) -> Family {
        match self {
            Problem::Benchmark(_) => Family::Benchmark,
            Problem::Engineering(_) => Family::Engineering,
            Problem::Path2d(_) => Family::Path2d,
            Problem::Path3d(_) => Family::Path3d,
        }
    }

    /// Known optimum or best reported value, if any.
    pub fn reference(&self) -> Option<f64> {
        match self {
            Problem::Benchmark(b) => Some(b.spec().f_star),
            Problem::Engineering(e) => Some(e.reference_best),
            Problem::Path2d(p) => p.map().reference_length(),
            Problem::Path3d(_) => None,
        }
    }

    fn inner(&self) -> &dyn Objective {
        match self {
            Problem::Benchmark(p) => p,
            Problem::Engineering(p) => p,
            Problem::Path2d(p) => p,
            Problem::Path3d(p) => p,
        }
    }
}

impl Objective for Problem {
    fn name(&self) -> &str {
        self.inner().name()
    }

    fn bounds(&self) -> &Bounds {
        self.inner().bounds()
    }

    fn evaluate(&self, x: &[f64], rng: &mut RngStream) -> f64 {
        self.inner().evaluate(x, rng)
    }
}

pub fn resolve(name: &str, options: &ProblemOptions) -> Result<Problem> {
    let trimmed = name.trim();
    if let Ok(id) = benchfuncs::parse_id(trimmed) {
        return Ok(Problem::Benchmark(Benchmark::new(id)?));
    }
    if trimmed.eq_ignore_ascii_case("SawmillDemand") {
        let opts = ModelOptions {
            sawmill_demand_ge: true,
            ..ModelOptions::default()
        };
        return Ok(Problem::Engineering(EngineeringProblem::with_options(
            EngineeringId::Sawmill,
            opts,
        )));
    }
    if let Ok(id) = trimmed.parse::<EngineeringId>() {
        return Ok(Problem::Engineering(EngineeringProblem::new(id)));
    }
    if let Ok(map) = pathplan2d::bundled_map(trimmed) {
        return Ok(Problem::Path2d(PathProblem::new(map, options.waypoints_2d)));
    }
    if let Ok(scene) = pathplan3d::bundled_scene(trimmed) {
        return Ok(Problem::Path3d(UavProblem::new(
            scene,
            options.waypoints_3d,
            options.weights,
        )?));
    }
    Err(Error::UnknownProblem(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub name: String,
    pub dimension: usize,
    pub reference: Option<f64>,
    pub description: String,
}

/// Every resolvable problem, in family order.
pub fn catalog(options: &ProblemOptions) -> Vec<CatalogEntry> {
    let mut names: Vec<String> = (1..=23).map(|i| format!("F{i}")).collect();
    names.extend(EngineeringId::ALL.iter().map(|id| id.name().to_string()));
    names.push("SawmillDemand".into());
    names.extend(
        pathplan2d::bundled_map_names()
            .into_iter()
            .map(String::from),
    );
    names.extend(
        pathplan3d::bundled_scene_names()
            .into_iter()
            .map(String::from),
    );
    names
        .iter()
        .map(|n| {
            let p = resolve(n, options).expect("bundled names resolve");
            let description = match &p {
                Problem::Benchmark(b) => {
                    let s = b.spec();
                    format!(
                        "{} on [{}, {}]",
                        s.name,
                        s.bounds.lower()[0],
                        s.bounds.upper()[0]
                    )
                }
                Problem::Engineering(e) => format!(
                    "{} inequality, {} equality constraints",
                    e.inequality_constraints, e.equality_constraints
                ),
                Problem::Path2d(q) => format!(
                    "{}x{} grid, {} blocked cells, K = {}",
                    q.map().width(),
                    q.map().height(),
                    q.map().blocked_cells().len(),
                    q.waypoints()
                ),
                Problem::Path3d(q) => format!(
                    "{} obstacles, g = {}",
                    q.scene().obstacles().len(),
                    q.waypoints()
                ),
            };
            CatalogEntry {
                family: p.family(),
                name: p.name().to_string(),
                dimension: p.dim(),
                reference: p.reference(),
                description,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_every_family() {
        let o = ProblemOptions::default();
        assert_eq!(resolve("f7", &o).unwrap().family(), Family::Benchmark);
        assert_eq!(resolve("threebartruss", &o).unwrap().dim(), 2);
        assert_eq!(
            resolve("SawmillDemand", &o).unwrap().name(),
            "SawmillDemand"
        );
        assert_eq!(resolve("Map3", &o).unwrap().dim(), 16);
        assert_eq!(resolve("Scene1", &o).unwrap().dim(), 30);
        assert!(matches!(resolve("F24", &o), Err(Error::UnknownProblem(_))));
        assert!(resolve("nope", &o).is_err());
    }

    #[test]
    fn catalog_counts() {
        let c = catalog(&ProblemOptions::default());
        let count = |f| c.iter().filter(|e| e.family == f).count();
        assert_eq!(count(Family::Benchmark), 23);
        assert_eq!(count(Family::Engineering), 11);
        assert_eq!(count(Family::Path2d), 5);
        assert_eq!(count(Family::Path3d), 3);
        let truss = c.iter().find(|e| e.name == "ThreeBarTruss").unwrap();
        assert_eq!(format!("{:.6}", truss.reference.unwrap()), "259.805047");
    }

    #[test]
    fn options_change_dimensions() {
        let o = ProblemOptions {
            waypoints_2d: 3,
            waypoints_3d: 5,
            ..ProblemOptions::default()
        };
        assert_eq!(resolve("Map1", &o).unwrap().dim(), 6);
        assert_eq!(resolve("Scene2", &o).unwrap().dim(), 9);
    }
}
