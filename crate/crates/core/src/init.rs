//! Population initializers: pseudo-random, Tent chaotic map and Good Nodes Set.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Fractional part of the golden ratio, used to decorrelate per-dimension seeds.
pub const PHI_FRAC: f64 = 0.618_033_988_7;

const TENT_NUDGE: f64 = 1e-7;

#[inline]
fn frac(x: f64) -> f64 {
    x - x.floor()
}

fn scale(u: f64, bounds: &Bounds, d: usize) -> f64 {
    bounds.lower()[d] + u * bounds.width(d)
}

/// `x = lb + (ub - lb) * u` with a fresh uniform `u` per coordinate
/// (agent-major draw order).
pub fn init_pseudo_random(n: usize, bounds: &Bounds, rng: &mut RngStream) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..bounds.dim())
                .map(|d| scale(rng.uniform(), bounds, d))
                .collect()
        })
        .collect()
}

#[inline]
fn tent(x: f64) -> f64 {
    if x < 0.5 {
        2.0 * x
    } else {
        2.0 * (1.0 - x)
    }
}

/// Raw Tent-map orbit `[x1, .., xn]` from `x0`, without any perturbation,
/// so the absorbing states 0.5 -> 1 -> 0 show up as they are.
pub fn tent_sequence(x0: f64, n: usize) -> Result<Vec<f64>> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tent x0 must lie in (0,1), got {x0}"
        )));
    }
    let mut out = Vec::with_capacity(n);
    let mut x = x0;
    for _ in 0..n {
        x = tent(x);
        out.push(x);
    }
    Ok(out)
}

fn unstick(x: f64) -> f64 {
    if x == 0.0 || x == 0.5 || x == 1.0 {
        frac(x + TENT_NUDGE)
    } else {
        x
    }
}

/// Tent-map initialization. Dimension `d` iterates its own orbit from
/// `frac(x0 + d * PHI_FRAC)`; iterates that land on 0, 0.5 or 1 are nudged
/// back into the open interval so the orbit never collapses.
pub fn init_tent(n: usize, bounds: &Bounds, x0: f64) -> Result<Vec<Vec<f64>>> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tent x0 must lie in (0,1), got {x0}"
        )));
    }
    let dim = bounds.dim();
    let mut out = vec![vec![0.0; dim]; n];
    for d in 0..dim {
        let mut x = unstick(frac(x0 + d as f64 * PHI_FRAC));
        for row in out.iter_mut() {
            x = unstick(tent(x));
            row[d] = scale(x, bounds, d);
        }
    }
    Ok(out)
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

/// Smallest prime `q >= 2D + 3`.
pub fn gns_prime(dim: usize) -> usize {
    (2 * dim + 3..)
        .find(|&q| is_prime(q))
        .expect("primes are unbounded")
}

/// Good-point generator `r[j] = frac(2 cos(2 pi j / q))`, `j = 1..=D`.
/// Entries that are zero or repeat an earlier entry are shifted by the
/// golden-ratio fraction until distinct.
pub fn gns_generator(dim: usize) -> Vec<f64> {
    let q = gns_prime(dim) as f64;
    let mut r: Vec<f64> = Vec::with_capacity(dim);
    for j in 1..=dim {
        let mut v = frac(2.0 * (2.0 * std::f64::consts::PI * j as f64 / q).cos());
        while v == 0.0 || r.iter().any(|&w| (w - v).abs() < 1e-12) {
            v = frac(v + PHI_FRAC);
        }
        r.push(v);
    }
    r
}

/// Parameters of a Good Nodes Set with `m` points in `D` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct GnsParams {
    pub m: usize,
    pub dim: usize,
    pub r: Vec<f64>,
}

impl GnsParams {
    pub fn new(m: usize, dim: usize) -> Self {
        Self {
            m,
            dim,
            r: gns_generator(dim),
        }
    }

    pub fn unit_points(&self) -> Vec<Vec<f64>> {
        gns_unit_points(self.m, &self.r)
    }
}

/// Points `p(k)[j] = frac(k * r[j])` for `k = 1..=n` (one generator per axis).
pub fn gns_unit_points(n: usize, r: &[f64]) -> Vec<Vec<f64>> {
    (1..=n)
        .map(|k| r.iter().map(|&rj| frac(k as f64 * rj)).collect())
        .collect()
}

/// Points `p(k)[j] = frac(k * r^j)` for a single scalar generator.
///
/// In three or more dimensions this variant is noticeably less uniform than
/// [`gns_unit_points`]; it is kept for comparison.
pub fn gns_unit_points_powers(n: usize, r: f64, dim: usize) -> Vec<Vec<f64>> {
    let powers: Vec<f64> = (1..=dim as i32).map(|j| r.powi(j)).collect();
    gns_unit_points(n, &powers)
}

/// Good Nodes Set initialization mapped into `bounds`; fully deterministic.
pub fn init_gns(n: usize, bounds: &Bounds) -> Vec<Vec<f64>> {
    let r = gns_generator(bounds.dim());
    gns_unit_points(n, &r)
        .into_iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(d, &u)| scale(u, bounds, d))
                .collect()
        })
        .collect()
}

/// Centered L2 discrepancy of points in the unit cube (Hickernell's closed form).
pub fn centered_l2_discrepancy(points: &[Vec<f64>]) -> f64 {
    let n = points.len() as f64;
    let dim = points.first().map_or(0, |p| p.len()) as i32;
    let term1 = (13.0_f64 / 12.0).powi(dim);
    let mut term2 = 0.0;
    for p in points {
        term2 += p
            .iter()
            .map(|&x| {
                let a = (x - 0.5).abs();
                1.0 + 0.5 * a - 0.5 * a * a
            })
            .product::<f64>();
    }
    let mut term3 = 0.0;
    for p in points {
        for q in points {
            term3 += p
                .iter()
                .zip(q)
                .map(|(&x, &y)| {
                    1.0 + 0.5 * (x - 0.5).abs() + 0.5 * (y - 0.5).abs() - 0.5 * (x - y).abs()
                })
                .product::<f64>();
        }
    }
    term1 - 2.0 / n * term2 + term3 / (n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pseudo_random_scaling() {
        // u = 0.25, 0.5, 0.75 examples, checked through the scale helper.
        let unit = Bounds::uniform(1, 0.0, 1.0).unwrap();
        assert_eq!(scale(0.25, &unit, 0), 0.25);
        let sym = Bounds::uniform(1, -5.0, 5.0).unwrap();
        assert_eq!(scale(0.5, &sym, 0), 0.0);
        let b = Bounds::uniform(1, 2.0, 4.0).unwrap();
        assert_eq!(scale(0.75, &b, 0), 3.5);
    }

    #[test]
    fn pseudo_random_uses_one_draw_per_coordinate() {
        let b = Bounds::uniform(3, 2.0, 4.0).unwrap();
        let pts = init_pseudo_random(4, &b, &mut RngStream::new(5));
        let mut rng = RngStream::new(5);
        for row in &pts {
            for &x in row {
                assert_eq!(x, 2.0 + 2.0 * rng.uniform());
            }
        }
    }

    #[test]
    fn tent_hand_sequences() {
        let s = tent_sequence(0.5, 2).unwrap();
        assert_eq!(s, vec![1.0, 0.0]);
        let s = tent_sequence(0.3, 4).unwrap();
        for (a, b) in s.iter().zip([0.6, 0.8, 0.4, 0.8]) {
            assert_relative_eq!(*a, b, epsilon = 1e-12);
        }
        assert_eq!(tent_sequence(0.25, 3).unwrap(), vec![0.5, 1.0, 0.0]);
        assert!(tent_sequence(0.0, 3).is_err());
        assert!(tent_sequence(1.0, 3).is_err());
    }

    #[test]
    fn tent_init_examples() {
        let unit = Bounds::uniform(1, 0.0, 1.0).unwrap();
        let p = init_tent(1, &unit, 0.3).unwrap();
        assert_relative_eq!(p[0][0], 0.6, epsilon = 1e-12);
        let b = Bounds::uniform(1, 0.0, 10.0).unwrap();
        let p = init_tent(2, &b, 0.3).unwrap();
        assert_relative_eq!(p[0][0], 6.0, epsilon = 1e-10);
        assert_relative_eq!(p[1][0], 8.0, epsilon = 1e-10);
    }

    #[test]
    fn tent_init_escapes_absorbing_states() {
        let unit = Bounds::uniform(2, 0.0, 1.0).unwrap();
        let p = init_tent(500, &unit, 0.25).unwrap();
        for row in &p {
            for &x in row {
                assert!(x > 0.0 && x < 1.0, "{x}");
            }
        }
        // Columns do not repeat each other.
        assert!(p.iter().any(|r| r[0] != r[1]));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(gns_prime(1), 5);
        assert_eq!(gns_prime(2), 7);
        assert_eq!(gns_prime(3), 11);
        assert_eq!(gns_prime(30), 67);
        let r1 = gns_generator(1);
        assert_relative_eq!(r1[0], 0.618_033_988_749_895, epsilon = 1e-12);
        let r2 = gns_generator(2);
        let c = |k: f64| 2.0 * (k * std::f64::consts::PI / 7.0).cos();
        assert_relative_eq!(r2[0], c(2.0) - c(2.0).floor(), epsilon = 1e-15);
        assert_relative_eq!(r2[1], c(4.0) - c(4.0).floor(), epsilon = 1e-15);
        for d in 1..60 {
            let r = gns_generator(d);
            assert!(r.iter().all(|&v| v > 0.0 && v < 1.0));
            for i in 0..d {
                for j in 0..i {
                    assert_ne!(r[i], r[j]);
                }
            }
        }
    }

    #[test]
    fn powers_form_example() {
        let p = gns_unit_points_powers(1, 0.618, 2);
        assert_relative_eq!(p[0][0], 0.618, epsilon = 1e-15);
        assert_relative_eq!(p[0][1], 0.618 * 0.618, epsilon = 1e-15);
    }

    #[test]
    fn gns_is_deterministic_and_inside() {
        let b = Bounds::new(vec![-3.0, 0.0, 10.0], vec![3.0, 1.0, 11.0]).unwrap();
        let a = init_gns(50, &b);
        assert_eq!(a, init_gns(50, &b));
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|x| b.contains(x)));
    }

    #[test]
    fn discrepancy_reference_value() {
        // Values from scipy.stats.qmc.discrepancy(..., method="CD").
        assert_relative_eq!(
            centered_l2_discrepancy(&[vec![0.5, 0.5]]),
            0.173_611_111_111_110_94,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            centered_l2_discrepancy(&[vec![0.25, 0.75], vec![0.75, 0.25]]),
            0.062_282_986_111_110_94,
            epsilon = 1e-12
        );
    }
}
