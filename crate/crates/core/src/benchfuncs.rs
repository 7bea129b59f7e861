//! The 23 classical benchmark functions (Yao et al. suite): F1-F7 unimodal,
//! F8-F13 multimodal at D = 30, F14-F23 fixed-dimension multimodal.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Modality {
    Unimodal,
    Multimodal,
    FixedDimension,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkSpec {
    /// 1..=23.
    pub id: usize,
    pub name: &'static str,
    pub dimension: usize,
    pub bounds: Bounds,
    /// Reported best value.
    pub f_star: f64,
    pub modality: Modality,
}

impl BenchmarkSpec {
    pub fn label(&self) -> String {
        format!("F{}", self.id)
    }
}

type Row = (&'static str, usize, &'static [(f64, f64)], f64);

const SCALE_30: usize = 30;

// name, dimension, per-dimension bounds (one entry = same for all), f*
const TABLE: [Row; 23] = [
    ("Sphere", SCALE_30, &[(-100.0, 100.0)], 0.0),
    ("Schwefel 2.22", SCALE_30, &[(-10.0, 10.0)], 0.0),
    ("Schwefel 1.2", SCALE_30, &[(-100.0, 100.0)], 0.0),
    ("Schwefel 2.21", SCALE_30, &[(-100.0, 100.0)], 0.0),
    ("Rosenbrock", SCALE_30, &[(-30.0, 30.0)], 0.0),
    ("Step", SCALE_30, &[(-100.0, 100.0)], 0.0),
    ("Quartic with noise", SCALE_30, &[(-1.28, 1.28)], 0.0),
    ("Schwefel", SCALE_30, &[(-500.0, 500.0)], -12569.5),
    ("Rastrigin", SCALE_30, &[(-5.12, 5.12)], 0.0),
    ("Ackley", SCALE_30, &[(-32.0, 32.0)], 0.0),
    ("Griewank", SCALE_30, &[(-600.0, 600.0)], 0.0),
    ("Penalized 1", SCALE_30, &[(-50.0, 50.0)], 0.0),
    ("Penalized 2", SCALE_30, &[(-50.0, 50.0)], 0.0),
    ("Shekel foxholes", 2, &[(-65.536, 65.536)], 0.998),
    ("Kowalik", 4, &[(-5.0, 5.0)], 0.0003075),
    ("Six-hump camel back", 2, &[(-5.0, 5.0)], -1.0316),
    ("Branin", 2, &[(-5.0, 10.0), (0.0, 15.0)], 0.398),
    ("Goldstein-Price", 2, &[(-2.0, 2.0)], 3.0),
    ("Hartmann 3", 3, &[(0.0, 1.0)], -3.8628),
    ("Hartmann 6", 6, &[(0.0, 1.0)], -3.32),
    ("Shekel 5", 4, &[(0.0, 10.0)], -10.1532),
    ("Shekel 7", 4, &[(0.0, 10.0)], -10.4029),
    ("Shekel 10", 4, &[(0.0, 10.0)], -10.5364),
];

fn build(id: usize) -> BenchmarkSpec {
    let (name, dimension, b, f_star) = TABLE[id - 1];
    let (lower, upper): (Vec<f64>, Vec<f64>) =
        (0..dimension).map(|d| b[d.min(b.len() - 1)]).unzip();
    BenchmarkSpec {
        id,
        name,
        dimension,
        bounds: Bounds::new(lower, upper).expect("static bounds are valid"),
        f_star,
        modality: match id {
            1..=7 => Modality::Unimodal,
            8..=13 => Modality::Multimodal,
            _ => Modality::FixedDimension,
        },
    }
}

/// All 23 functions in order.
pub fn catalog() -> Vec<BenchmarkSpec> {
    (1..=23).map(build).collect()
}

pub fn spec(id: usize) -> Result<BenchmarkSpec> {
    if (1..=23).contains(&id) {
        Ok(build(id))
    } else {
        Err(Error::UnknownProblem(format!("F{id}")))
    }
}

/// Parses labels such as `"F7"` or `"f7"`.
pub fn parse_id(label: &str) -> Result<usize> {
    label
        .strip_prefix(['F', 'f'])
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|id| (1..=23).contains(id))
        .ok_or_else(|| Error::UnknownProblem(label.to_string()))
}

/// Evaluates function `id` at `x`. F7 draws its additive noise from `rng`.
pub fn evaluate(id: usize, x: &[f64], rng: &mut RngStream) -> Result<f64> {
    let s = spec(id)?;
    s.bounds.check_dim(x.len())?;
    Ok(eval_unchecked(id, x, rng))
}

fn u_penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

pub(crate) const FOXHOLE_A: [[f64; 25]; 2] = {
    let base = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut a = [[0.0; 25]; 2];
    let mut j = 0;
    while j < 25 {
        a[0][j] = base[j % 5];
        a[1][j] = base[j / 5];
        j += 1;
    }
    a
};

pub(crate) const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
pub(crate) const KOWALIK_B_INV: [f64; 11] =
    [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

pub(crate) const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
pub(crate) const HARTMANN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];
pub(crate) const HARTMANN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];
pub(crate) const HARTMANN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
pub(crate) const HARTMANN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

pub(crate) const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
pub(crate) const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn hartmann<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let s: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMANN_C[i] * (-s).exp()
        })
        .sum::<f64>()
}

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

pub(crate) fn eval_unchecked(id: usize, x: &[f64], rng: &mut RngStream) -> f64 {
    let n = x.len() as f64;
    match id {
        1 => x.iter().map(|v| v * v).sum(),
        2 => x.iter().map(|v| v.abs()).sum::<f64>() + x.iter().map(|v| v.abs()).product::<f64>(),
        3 => {
            let mut acc = 0.0;
            let mut total = 0.0;
            for v in x {
                acc += v;
                total += acc * acc;
            }
            total
        }
        4 => x.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
        5 => x
            .windows(2)
            .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
            .sum(),
        6 => x.iter().map(|v| (v + 0.5).floor().powi(2)).sum(),
        7 => {
            let s: f64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * v.powi(4))
                .sum();
            s + rng.uniform()
        }
        8 => x.iter().map(|v| -v * v.abs().sqrt().sin()).sum(),
        9 => x
            .iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
            .sum(),
        10 => {
            let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
            let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
            -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
        }
        11 => {
            let s = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
            let p: f64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                .product();
            s - p + 1.0
        }
        12 => {
            let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
            let last = y[y.len() - 1];
            let inner: f64 = y
                .windows(2)
                .map(|w| (w[0] - 1.0).powi(2) * (1.0 + 10.0 * (PI * w[1]).sin().powi(2)))
                .sum();
            PI / n * (10.0 * (PI * y[0]).sin().powi(2) + inner + (last - 1.0).powi(2))
                + x.iter().map(|&v| u_penalty(v, 10.0, 100.0, 4)).sum::<f64>()
        }
        13 => {
            let last = x[x.len() - 1];
            let inner: f64 = x
                .windows(2)
                .map(|w| (w[0] - 1.0).powi(2) * (1.0 + (3.0 * PI * w[1]).sin().powi(2)))
                .sum();
            0.1 * ((3.0 * PI * x[0]).sin().powi(2)
                + inner
                + (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2)))
                + x.iter().map(|&v| u_penalty(v, 5.0, 100.0, 4)).sum::<f64>()
        }
        14 => {
            let s: f64 = (0..25)
                .map(|j| {
                    let d = (x[0] - FOXHOLE_A[0][j]).powi(6) + (x[1] - FOXHOLE_A[1][j]).powi(6);
                    1.0 / ((j + 1) as f64 + d)
                })
                .sum();
            1.0 / (1.0 / 500.0 + s)
        }
        15 => KOWALIK_A
            .iter()
            .zip(KOWALIK_B_INV)
            .map(|(a, binv)| {
                let b = 1.0 / binv;
                let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
                (a - model).powi(2)
            })
            .sum(),
        16 => {
            let (a, b) = (x[0], x[1]);
            4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
        }
        17 => {
            let (a, b) = (x[0], x[1]);
            (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
                + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
                + 10.0
        }
        18 => {
            let (a, b) = (x[0], x[1]);
            (1.0 + (a + b + 1.0).powi(2)
                * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b))
                * (30.0
                    + (2.0 * a - 3.0 * b).powi(2)
                        * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b))
        }
        19 => hartmann(x, &HARTMANN3_A, &HARTMANN3_P),
        20 => hartmann(x, &HARTMANN6_A, &HARTMANN6_P),
        21 => shekel(x, 5),
        22 => shekel(x, 7),
        23 => shekel(x, 10),
        _ => unreachable!("benchmark ids are validated by callers"),
    }
}

/// A benchmark function as an [`Objective`], optionally at a custom
/// dimension (only meaningful for the scalable F1-F13).
#[derive(Debug, Clone)]
pub struct Benchmark {
    spec: BenchmarkSpec,
    label: String,
}

impl Benchmark {
    pub fn new(id: usize) -> Result<Self> {
        let spec = spec(id)?;
        Ok(Self {
            label: spec.label(),
            spec,
        })
    }

    pub fn with_dimension(id: usize, dimension: usize) -> Result<Self> {
        let mut spec = spec(id)?;
        if id > 13 && dimension != spec.dimension {
            return Err(Error::InvalidParameter(format!(
                "F{id} has fixed dimension {}",
                spec.dimension
            )));
        }
        if dimension == 0 {
            return Err(Error::InvalidParameter(
                "dimension must be at least 1".into(),
            ));
        }
        let (lo, hi) = (spec.bounds.lower()[0], spec.bounds.upper()[0]);
        spec.bounds = Bounds::uniform(dimension, lo, hi)?;
        spec.dimension = dimension;
        Ok(Self {
            label: spec.label(),
            spec,
        })
    }

    pub fn spec(&self) -> &BenchmarkSpec {
        &self.spec
    }
}

impl Objective for Benchmark {
    fn name(&self) -> &str {
        &self.label
    }

    fn bounds(&self) -> &Bounds {
        &self.spec.bounds
    }

    fn evaluate(&self, x: &[f64], rng: &mut RngStream) -> f64 {
        eval_unchecked(self.spec.id, x, rng)
    }
}
