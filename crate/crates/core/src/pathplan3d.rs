//! 3D UAV trajectory cost: weighted length, altitude spread and turning,
//! plus a squared-intrusion penalty against inflated obstacles.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::RngStream;

pub type Point3 = [f64; 3];

/// Default number of waypoints including start and goal.
pub const DEFAULT_WAYPOINTS: usize = 12;
pub const OBSTACLE_PENALTY: f64 = 1e3;
pub const SAMPLE_SPACING: f64 = 1.0;
pub const DEFAULT_SAFETY_MARGIN: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Obstacle {
    Sphere {
        center: Point3,
        radius: f64,
    },
    /// Vertical cylinder standing on `center` (the base disc center).
    Cylinder {
        center: Point3,
        radius: f64,
        height: f64,
    },
}

impl Obstacle {
    /// Signed distance from `p` to the surface, negative inside.
    pub fn signed_distance(&self, p: Point3) -> f64 {
        match *self {
            Obstacle::Sphere { center, radius } => norm(sub(p, center)) - radius,
            Obstacle::Cylinder {
                center,
                radius,
                height,
            } => {
                let half = 0.5 * height;
                let radial = (p[0] - center[0]).hypot(p[1] - center[1]) - radius;
                let axial = (p[2] - (center[2] + half)).abs() - half;
                let inside = radial.max(axial).min(0.0);
                let outside = radial.max(0.0).hypot(axial.max(0.0));
                inside + outside
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Obstacle::Sphere { radius, .. } => radius.is_finite() && radius > 0.0,
            Obstacle::Cylinder { radius, height, .. } => {
                radius.is_finite() && radius > 0.0 && height.is_finite() && height > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "degenerate obstacle {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneBounds {
    pub lower: Point3,
    pub upper: Point3,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    #[serde(default)]
    name: Option<String>,
    bounds: SceneBounds,
    #[serde(default)]
    obstacles: Vec<Obstacle>,
    #[serde(default = "default_start")]
    start: Point3,
    #[serde(default = "default_goal")]
    goal: Point3,
    #[serde(default = "default_margin")]
    r_safe: f64,
}

fn default_start() -> Point3 {
    [20.0, 20.0, 20.0]
}

fn default_goal() -> Point3 {
    [180.0, 180.0, 20.0]
}

fn default_margin() -> f64 {
    DEFAULT_SAFETY_MARGIN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SceneFile", into = "SceneFile")]
pub struct Scene3D {
    pub name: String,
    bounds: SceneBounds,
    obstacles: Vec<Obstacle>,
    start: Point3,
    goal: Point3,
    r_safe: f64,
}

impl TryFrom<SceneFile> for Scene3D {
    type Error = Error;

    fn try_from(f: SceneFile) -> Result<Self> {
        let mut scene = Scene3D::new(f.bounds, f.obstacles, f.start, f.goal, f.r_safe)?;
        if let Some(name) = f.name {
            scene.name = name;
        }
        Ok(scene)
    }
}

impl From<Scene3D> for SceneFile {
    fn from(s: Scene3D) -> Self {
        SceneFile {
            name: Some(s.name),
            bounds: s.bounds,
            obstacles: s.obstacles,
            start: s.start,
            goal: s.goal,
            r_safe: s.r_safe,
        }
    }
}

impl Scene3D {
    pub fn new(
        bounds: SceneBounds,
        obstacles: Vec<Obstacle>,
        start: Point3,
        goal: Point3,
        r_safe: f64,
    ) -> Result<Self> {
        if (0..3).any(|d| {
            bounds.lower[d].partial_cmp(&bounds.upper[d]) != Some(std::cmp::Ordering::Less)
        }) {
            return Err(Error::InvalidParameter(format!(
                "empty scene box {bounds:?}"
            )));
        }
        if !(r_safe.is_finite() && r_safe >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "r_safe must be >= 0, got {r_safe}"
            )));
        }
        for o in &obstacles {
            o.validate()?;
        }
        let scene = Self {
            name: "custom".into(),
            bounds,
            obstacles,
            start,
            goal,
            r_safe,
        };
        for (label, p) in [("start", start), ("goal", goal)] {
            if scene.clearance(p) < r_safe {
                return Err(Error::InvalidParameter(format!(
                    "{label} {p:?} lies inside an inflated obstacle"
                )));
            }
        }
        Ok(scene)
    }

    /// A 200 x 200 x 100 m box with no obstacles and the default endpoints.
    pub fn empty() -> Self {
        let mut s = Self::new(
            SceneBounds {
                lower: [0.0; 3],
                upper: [200.0, 200.0, 100.0],
            },
            Vec::new(),
            default_start(),
            default_goal(),
            DEFAULT_SAFETY_MARGIN,
        )
        .expect("empty scene is valid");
        s.name = "EmptyScene".into();
        s
    }

    pub fn bounds(&self) -> SceneBounds {
        self.bounds
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn start(&self) -> Point3 {
        self.start
    }

    pub fn goal(&self) -> Point3 {
        self.goal
    }

    pub fn r_safe(&self) -> f64 {
        self.r_safe
    }

    /// Signed distance to the nearest obstacle surface (+inf with none).
    pub fn clearance(&self, p: Point3) -> f64 {
        self.obstacles
            .iter()
            .map(|o| o.signed_distance(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Weights of length, altitude spread and turning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights(pub [f64; 3]);

impl Default for Weights {
    fn default() -> Self {
        Weights([0.5, 0.3, 0.2])
    }
}

impl Weights {
    pub fn validate(&self) -> Result<()> {
        let w = self.0;
        if w.iter().any(|v| !(v.is_finite() && *v >= 0.0))
            || (w.iter().sum::<f64>() - 1.0).abs() > 1e-9
        {
            return Err(Error::InvalidParameter(format!(
                "weights must be non-negative and sum to 1, got {w:?}"
            )));
        }
        Ok(())
    }
}

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

/// Total segment length.
pub fn f_pc(traj: &[Point3]) -> f64 {
    traj.windows(2).map(|w| norm(sub(w[1], w[0]))).sum()
}

/// Population standard deviation of the waypoint altitudes.
pub fn f_hc(traj: &[Point3]) -> f64 {
    if traj.is_empty() {
        return 0.0;
    }
    // Shifting by the first altitude keeps a constant profile at exactly 0.
    let z0 = traj[0][2];
    let g = traj.len() as f64;
    let mean = traj.iter().map(|p| p[2] - z0).sum::<f64>() / g;
    (traj.iter().map(|p| (p[2] - z0 - mean).powi(2)).sum::<f64>() / g).sqrt()
}

/// Sum of turning angles between consecutive segments.
pub fn f_sc(traj: &[Point3]) -> f64 {
    traj.windows(3)
        .map(|w| {
            let u = sub(w[1], w[0]);
            let v = sub(w[2], w[1]);
            if norm(u) == 0.0 || norm(v) == 0.0 {
                return 0.0;
            }
            // atan2 of |u x v| and u.v stays exact for collinear segments,
            // where acos of a normalized dot product loses ~1e-8 rad.
            norm(cross(u, v)).atan2(dot(u, v))
        })
        .sum()
}

pub fn f_tc(traj: &[Point3], weights: Weights) -> Result<f64> {
    weights.validate()?;
    Ok(weighted_cost(traj, weights))
}

fn weighted_cost(traj: &[Point3], weights: Weights) -> f64 {
    let [w1, w2, w3] = weights.0;
    w1 * f_pc(traj) + w2 * f_hc(traj) + w3 * f_sc(traj)
}

/// Points every `SAMPLE_SPACING` meters along the trajectory, both ends
/// of every segment included once.
pub fn sample_points(traj: &[Point3]) -> Vec<Point3> {
    let mut out = Vec::new();
    for w in traj.windows(2) {
        let d = sub(w[1], w[0]);
        let steps = (norm(d) / SAMPLE_SPACING).ceil().max(1.0) as usize;
        for i in 0..steps {
            let t = i as f64 / steps as f64;
            out.push([w[0][0] + t * d[0], w[0][1] + t * d[1], w[0][2] + t * d[2]]);
        }
    }
    if let Some(last) = traj.last() {
        out.push(*last);
    }
    out
}

/// `sum over samples of 1e3 * max(0, r_safe - clearance)^2`.
pub fn obstacle_penalty(traj: &[Point3], scene: &Scene3D) -> f64 {
    if scene.obstacles.is_empty() {
        return 0.0;
    }
    sample_points(traj)
        .into_iter()
        .map(|s| {
            let intrusion = (scene.r_safe - scene.clearance(s)).max(0.0);
            OBSTACLE_PENALTY * intrusion * intrusion
        })
        .sum()
}

/// Decodes `3 (g - 2)` reals into `[P_s, P_2 .. P_{g-1}, P_g]`.
pub fn decode(x: &[f64], scene: &Scene3D) -> Result<Vec<Point3>> {
    if !x.len().is_multiple_of(3) {
        return Err(Error::DimensionMismatch {
            expected: 3 * (x.len() / 3 + 1),
            found: x.len(),
        });
    }
    let mut traj = Vec::with_capacity(x.len() / 3 + 2);
    traj.push(scene.start);
    traj.extend(x.chunks_exact(3).map(|c| [c[0], c[1], c[2]]));
    traj.push(scene.goal);
    Ok(traj)
}

pub fn uav_fitness(x: &[f64], scene: &Scene3D, weights: Weights) -> Result<f64> {
    weights.validate()?;
    let traj = decode(x, scene)?;
    Ok(weighted_cost(&traj, weights) + obstacle_penalty(&traj, scene))
}

/// A scene bound to a waypoint count and weights, usable as an [`Objective`].
#[derive(Debug, Clone)]
pub struct UavProblem {
    scene: Scene3D,
    waypoints: usize,
    weights: Weights,
    bounds: Bounds,
}

impl UavProblem {
    /// `waypoints` counts start and goal, so it must be at least 3 for the
    /// optimizer to have something to move.
    pub fn new(scene: Scene3D, waypoints: usize, weights: Weights) -> Result<Self> {
        weights.validate()?;
        if waypoints < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least 3 waypoints, got {waypoints}"
            )));
        }
        let b = scene.bounds;
        let interior = waypoints - 2;
        let lower = (0..interior).flat_map(|_| b.lower).collect();
        let upper = (0..interior).flat_map(|_| b.upper).collect();
        Ok(Self {
            bounds: Bounds::new(lower, upper)?,
            scene,
            waypoints,
            weights,
        })
    }

    pub fn scene(&self) -> &Scene3D {
        &self.scene
    }

    pub fn waypoints(&self) -> usize {
        self.waypoints
    }

    pub fn decode(&self, x: &[f64]) -> Result<Vec<Point3>> {
        decode(x, &self.scene)
    }
}

impl Objective for UavProblem {
    fn name(&self) -> &str {
        &self.scene.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64], _rng: &mut RngStream) -> f64 {
        match decode(x, &self.scene) {
            Ok(traj) => weighted_cost(&traj, self.weights) + obstacle_penalty(&traj, &self.scene),
            Err(_) => f64::MAX,
        }
    }
}

pub fn write_trajectory_csv<W: Write>(traj: &[Point3], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["waypoint", "x", "y", "z"])?;
    for (i, p) in traj.iter().enumerate() {
        w.write_record([
            i.to_string(),
            format!("{:.16e}", p[0]),
            format!("{:.16e}", p[1]),
            format!("{:.16e}", p[2]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

const BUNDLED: [(&str, &str); 2] = [
    ("Scene1", include_str!("../data/scenes/scene1.json")),
    ("Scene2", include_str!("../data/scenes/scene2.json")),
];

pub fn bundled_scene_names() -> Vec<&'static str> {
    std::iter::once("EmptyScene")
        .chain(BUNDLED.iter().map(|(n, _)| *n))
        .collect()
}

pub fn bundled_scene(name: &str) -> Result<Scene3D> {
    if name.eq_ignore_ascii_case("emptyscene") {
        return Ok(Scene3D::empty());
    }
    let (canonical, text) = BUNDLED
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))?;
    let mut scene: Scene3D = serde_json::from_str(text)?;
    scene.name = canonical.to_string();
    Ok(scene)
}
