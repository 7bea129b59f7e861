//! Grid-map robot path planning.
//!
//! Cells are unit squares centered on integer coordinates `(cx, cy)` with
//! `1 <= cx <= width` and `1 <= cy <= height`, so the map rectangle is
//! `[0.5, width + 0.5) x [0.5, height + 0.5)`. An optimizer vector holds `K`
//! interior waypoints flattened as `x1, y1, x2, y2, ...`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::RngStream;

/// Spacing between collision samples along a segment, in cells.
pub const SAMPLE_SPACING: f64 = 0.25;

/// Default number of interior waypoints.
pub const DEFAULT_WAYPOINTS: usize = 8;

pub type Point2 = [f64; 2];

/// On-disk shape of a map; `start` and `goal` default to the two corners.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridMapFile {
    #[serde(default)]
    name: Option<String>,
    width: usize,
    height: usize,
    #[serde(default)]
    blocked: Vec<[i64; 2]>,
    #[serde(default)]
    start: Option<Point2>,
    #[serde(default)]
    goal: Option<Point2>,
    /// Shortest collision-free length, when known.
    #[serde(default)]
    reference_length: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridMapFile", into = "GridMapFile")]
pub struct GridMap {
    pub name: String,
    width: usize,
    height: usize,
    blocked: Vec<[i64; 2]>,
    occupancy: Vec<bool>,
    start: Point2,
    goal: Point2,
    reference_length: Option<f64>,
}

impl TryFrom<GridMapFile> for GridMap {
    type Error = Error;

    fn try_from(f: GridMapFile) -> Result<Self> {
        let mut map = GridMap::new(f.width, f.height, f.blocked)?;
        if let Some(name) = f.name {
            map.name = name;
        }
        let (start, goal) = (f.start.unwrap_or(map.start), f.goal.unwrap_or(map.goal));
        map = map.with_endpoints(start, goal)?;
        map.reference_length = f.reference_length;
        Ok(map)
    }
}

impl From<GridMap> for GridMapFile {
    fn from(m: GridMap) -> Self {
        GridMapFile {
            name: Some(m.name),
            width: m.width,
            height: m.height,
            blocked: m.blocked,
            start: Some(m.start),
            goal: Some(m.goal),
            reference_length: m.reference_length,
        }
    }
}

impl GridMap {
    /// A map with the default endpoints `(1, 1)` and `(width, height)`.
    pub fn new(width: usize, height: usize, blocked: Vec<[i64; 2]>) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::InvalidParameter(format!(
                "map must be at least 2x2, got {width}x{height}"
            )));
        }
        let mut occupancy = vec![false; width * height];
        for &[cx, cy] in &blocked {
            if cx < 1 || cy < 1 || cx as usize > width || cy as usize > height {
                return Err(Error::InvalidParameter(format!(
                    "blocked cell ({cx}, {cy}) outside a {width}x{height} map"
                )));
            }
            occupancy[(cy as usize - 1) * width + (cx as usize - 1)] = true;
        }
        let map = Self {
            name: "custom".into(),
            width,
            height,
            blocked,
            occupancy,
            start: [1.0, 1.0],
            goal: [width as f64, height as f64],
            reference_length: None,
        };
        let (start, goal) = (map.start, map.goal);
        map.with_endpoints(start, goal)
    }

    pub fn empty(width: usize, height: usize) -> Result<Self> {
        let mut map = Self::new(width, height, Vec::new())?;
        map.name = "Empty".into();
        map.reference_length = Some(distance(map.start, map.goal));
        Ok(map)
    }

    /// Replaces the endpoints; both must lie in free cells.
    pub fn with_endpoints(mut self, start: Point2, goal: Point2) -> Result<Self> {
        for (label, p) in [("start", start), ("goal", goal)] {
            if self.is_blocked(p) {
                return Err(Error::InvalidParameter(format!(
                    "{label} {p:?} is not in a free cell"
                )));
            }
        }
        self.start = start;
        self.goal = goal;
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Point2 {
        self.start
    }

    pub fn goal(&self) -> Point2 {
        self.goal
    }

    pub fn blocked_cells(&self) -> &[[i64; 2]] {
        &self.blocked
    }

    pub fn reference_length(&self) -> Option<f64> {
        self.reference_length
    }

    /// Collision penalty per colliding segment, `width * height`.
    pub fn penalty_coefficient(&self) -> f64 {
        (self.width * self.height) as f64
    }

    /// True for points in a blocked cell or outside the map rectangle.
    pub fn is_blocked(&self, p: Point2) -> bool {
        let cx = (p[0] + 0.5).floor();
        let cy = (p[1] + 0.5).floor();
        if !(cx >= 1.0 && cy >= 1.0 && cx <= self.width as f64 && cy <= self.height as f64) {
            return true;
        }
        self.occupancy[(cy as usize - 1) * self.width + (cx as usize - 1)]
    }

    /// Box for `k` waypoints: `[1, width] x [1, height]` per waypoint.
    pub fn waypoint_bounds(&self, k: usize) -> Bounds {
        let mut lower = Vec::with_capacity(2 * k);
        let mut upper = Vec::with_capacity(2 * k);
        for _ in 0..k {
            lower.extend([1.0, 1.0]);
            upper.extend([self.width as f64, self.height as f64]);
        }
        Bounds::new(lower, upper).expect("map dimensions are at least 2")
    }
}

fn distance(a: Point2, b: Point2) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

/// Whether any sample along `a -> b` (endpoints included) is blocked.
pub fn segment_collides(a: Point2, b: Point2, map: &GridMap) -> bool {
    let steps = (distance(a, b) / SAMPLE_SPACING).ceil().max(1.0) as usize;
    (0..=steps).any(|i| {
        let t = i as f64 / steps as f64;
        map.is_blocked([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])])
    })
}

pub fn path_length(polyline: &[Point2]) -> f64 {
    polyline.windows(2).map(|w| distance(w[0], w[1])).sum()
}

/// Builds `[S, w_1..w_K, E]` and then drops, in one forward sweep, every
/// interior waypoint whose bypass segment from the last kept point to the
/// next point is collision-free. By the triangle inequality such a bypass
/// never lengthens the path.
pub fn decode_and_smooth(x: &[f64], map: &GridMap) -> Result<Vec<Point2>> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: x.len() + 1,
            found: x.len(),
        });
    }
    let mut raw = Vec::with_capacity(x.len() / 2 + 2);
    raw.push(map.start);
    raw.extend(x.chunks_exact(2).map(|c| [c[0], c[1]]));
    raw.push(map.goal);

    let mut kept = vec![raw[0]];
    for i in 1..raw.len() - 1 {
        let prev = *kept.last().expect("start is always kept");
        if !segment_collides(prev, raw[i + 1], map) {
            continue;
        }
        kept.push(raw[i]);
    }
    kept.push(*raw.last().expect("goal present"));
    Ok(kept)
}

/// Number of segments with at least one blocked or out-of-map sample.
pub fn collision_count(polyline: &[Point2], map: &GridMap) -> usize {
    polyline
        .windows(2)
        .filter(|w| segment_collides(w[0], w[1], map))
        .count()
}

/// Smoothed length when collision-free, otherwise `width * height` per
/// colliding segment.
pub fn path_fitness(x: &[f64], map: &GridMap) -> Result<f64> {
    let path = decode_and_smooth(x, map)?;
    Ok(fitness_of_polyline(&path, map))
}

pub fn fitness_of_polyline(path: &[Point2], map: &GridMap) -> f64 {
    match collision_count(path, map) {
        0 => path_length(path),
        hits => map.penalty_coefficient() * hits as f64,
    }
}

/// A map bound to a waypoint count, usable as an [`Objective`].
#[derive(Debug, Clone)]
pub struct PathProblem {
    map: GridMap,
    waypoints: usize,
    bounds: Bounds,
}

impl PathProblem {
    pub fn new(map: GridMap, waypoints: usize) -> Self {
        let bounds = map.waypoint_bounds(waypoints.max(1));
        Self {
            map,
            waypoints,
            bounds,
        }
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    pub fn waypoints(&self) -> usize {
        self.waypoints
    }

    pub fn decode(&self, x: &[f64]) -> Result<Vec<Point2>> {
        decode_and_smooth(&x[..2 * self.waypoints], &self.map)
    }
}

impl Objective for PathProblem {
    fn name(&self) -> &str {
        &self.map.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64], _rng: &mut RngStream) -> f64 {
        // With zero waypoints the box still has one dummy point that is ignored.
        self.decode(x)
            .map(|p| fitness_of_polyline(&p, &self.map))
            .unwrap_or(f64::MAX)
    }
}

pub fn write_path_csv<W: Write>(path: &[Point2], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertex", "x", "y"])?;
    for (i, p) in path.iter().enumerate() {
        w.write_record([
            i.to_string(),
            format!("{:.16e}", p[0]),
            format!("{:.16e}", p[1]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

const BUNDLED: [(&str, &str); 4] = [
    ("Map1", include_str!("../data/maps/map1.json")),
    ("Map2", include_str!("../data/maps/map2.json")),
    ("Map3", include_str!("../data/maps/map3.json")),
    ("Map4", include_str!("../data/maps/map4.json")),
];

/// Names of the bundled maps, the empty 20x20 map first.
pub fn bundled_map_names() -> Vec<&'static str> {
    std::iter::once("Empty")
        .chain(BUNDLED.iter().map(|(n, _)| *n))
        .collect()
}

pub fn bundled_map(name: &str) -> Result<GridMap> {
    if name.eq_ignore_ascii_case("empty") || name.eq_ignore_ascii_case("map0") {
        return GridMap::empty(20, 20);
    }
    let (canonical, text) = BUNDLED
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))?;
    let mut map: GridMap = serde_json::from_str(text)?;
    map.name = canonical.to_string();
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wall_map() -> GridMap {
        // Vertical wall x = 10, y = 1..=3 on a 20x20 map.
        GridMap::new(20, 20, vec![[10, 1], [10, 2], [10, 3]]).unwrap()
    }

    #[test]
    fn no_waypoints_is_straight_segment() {
        let map = GridMap::empty(20, 20).unwrap();
        let path = decode_and_smooth(&[], &map).unwrap();
        assert_eq!(path, vec![[1.0, 1.0], [20.0, 20.0]]);
        let f = path_fitness(&[], &map).unwrap();
        assert!((f - 19.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((f - 26.8701).abs() < 1e-4);
    }

    #[test]
    fn collinear_point_removed() {
        let map = GridMap::empty(20, 20).unwrap();
        let path = decode_and_smooth(&[5.0, 5.0], &map).unwrap();
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn waypoint_guarding_wall_is_kept() {
        let map = wall_map().with_endpoints([5.0, 2.0], [15.0, 2.0]).unwrap();
        let x = [10.0, 6.0];
        let path = decode_and_smooth(&x, &map).unwrap();
        assert_eq!(path, vec![[5.0, 2.0], [10.0, 6.0], [15.0, 2.0]]);
        assert_eq!(collision_count(&path, &map), 0);
    }

    #[test]
    fn collision_counts() {
        let map = GridMap::empty(20, 20).unwrap();
        assert_eq!(collision_count(&[[1.0, 1.0], [20.0, 20.0]], &map), 0);

        let one = wall_map().with_endpoints([5.0, 2.0], [15.0, 2.0]).unwrap();
        let straight = [one.start(), one.goal()];
        assert_eq!(collision_count(&straight, &one), 1);
        assert_eq!(fitness_of_polyline(&straight, &one), 400.0);

        let two = GridMap::new(20, 20, vec![[5, 10], [15, 10]]).unwrap();
        let path = [[1.0, 10.0], [10.0, 10.0], [20.0, 10.0]];
        assert_eq!(collision_count(&path, &two), 2);
        assert_eq!(fitness_of_polyline(&path, &two), 800.0);
    }

    #[test]
    fn outside_map_counts_as_collision() {
        let map = GridMap::empty(5, 5).unwrap();
        assert!(map.is_blocked([0.4, 1.0]));
        assert!(map.is_blocked([5.5, 1.0]));
        assert!(!map.is_blocked([0.5, 1.0]));
        assert_eq!(collision_count(&[[1.0, 1.0], [1.0, 9.0]], &map), 1);
    }

    #[test]
    fn blocked_endpoint_rejected() {
        assert!(GridMap::new(5, 5, vec![[1, 1]]).is_err());
        assert!(GridMap::new(5, 5, vec![[6, 1]]).is_err());
        assert!(GridMap::new(1, 5, vec![]).is_err());
    }

    #[test]
    fn odd_length_vector_rejected() {
        let map = GridMap::empty(5, 5).unwrap();
        assert!(decode_and_smooth(&[1.0], &map).is_err());
    }

    #[test]
    fn json_round_trip_and_strictness() {
        let map = bundled_map("Map2").unwrap();
        let text = serde_json::to_string(&map).unwrap();
        let back: GridMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, map);
        let bad = r#"{"width": 4, "height": 4, "foo": 1}"#;
        assert!(serde_json::from_str::<GridMap>(bad).is_err());
        let defaults: GridMap = serde_json::from_str(r#"{"width": 4, "height": 3}"#).unwrap();
        assert_eq!(defaults.start(), [1.0, 1.0]);
        assert_eq!(defaults.goal(), [4.0, 3.0]);
    }

    #[test]
    fn bundled_maps_load() {
        for name in bundled_map_names() {
            let map = bundled_map(name).unwrap();
            assert_eq!((map.width(), map.height()), (20, 20));
            assert!(map.reference_length().is_some(), "{name}");
        }
        assert!(bundled_map("Map9").is_err());
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        write_path_csv(&[[1.0, 2.0], [3.0, 4.5]], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "vertex,x,y");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1,3.0"));
    }

    #[test]
    fn problem_objective() {
        let p = PathProblem::new(GridMap::empty(20, 20).unwrap(), 8);
        assert_eq!(p.dim(), 16);
        let mut rng = RngStream::new(0);
        let x = vec![10.0; 16];
        assert!((p.evaluate(&x, &mut rng) - 19.0 * 2f64.sqrt()).abs() < 1e-12);
    }
}
