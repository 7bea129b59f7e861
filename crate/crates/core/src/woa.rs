//! Standard whale optimization: encircling, bubble-net spiral and random search.

use crate::bounds::Bounds;
use crate::population::Population;
use crate::rng::RngStream;

/// Linearly decreasing convergence factor `a = 2 - 2t/T`.
pub fn linear_a(t: usize, iterations: usize) -> f64 {
    2.0 - 2.0 * t as f64 / iterations as f64
}

/// Spiral-range parameter `a1 = -1 - t/T`, so `l` falls in `[a1, 1]`.
pub fn spiral_a1(t: usize, iterations: usize) -> f64 {
    -1.0 - t as f64 / iterations as f64
}

/// Per-agent random coefficients for one WOA move.
///
/// `a_scalar` is the single coefficient used for the `|A| < 1` branch test;
/// the vectors `a_vec` and `c_vec` drive the update itself.
#[derive(Debug, Clone, PartialEq)]
pub struct WoaCoefficients {
    pub a: f64,
    pub a1: f64,
    pub p: f64,
    pub a_scalar: f64,
    pub a_vec: Vec<f64>,
    pub c_vec: Vec<f64>,
    pub l: f64,
}

/// Draws, in order: `p`, the scalar `r` behind `a_scalar`, `D` values for
/// `A`, `D` values for `C`, and the `Rand` behind `l`.
pub fn coefficients(a: f64, a1: f64, dim: usize, rng: &mut RngStream) -> WoaCoefficients {
    let p = rng.uniform();
    let a_scalar = 2.0 * a * rng.uniform() - a;
    let a_vec = (0..dim).map(|_| 2.0 * a * rng.uniform() - a).collect();
    let c_vec = (0..dim).map(|_| 2.0 * rng.uniform()).collect();
    let l = (a1 - 1.0) * rng.uniform() + 1.0;
    WoaCoefficients {
        a,
        a1,
        p,
        a_scalar,
        a_vec,
        c_vec,
        l,
    }
}

/// `X* - A * |C * X* - X|`.
pub fn encircle_update(x: &[f64], leader: &[f64], a: &[f64], c: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(leader)
        .zip(a.iter().zip(c))
        .map(|((xi, li), (ai, ci))| li - ai * (ci * li - xi).abs())
        .collect()
}

/// `X* + |X* - X| * e^{bl} cos(2 pi l)`.
pub fn spiral_update(x: &[f64], leader: &[f64], b: f64, l: f64) -> Vec<f64> {
    let factor = spiral_factor(b, l);
    x.iter()
        .zip(leader)
        .map(|(xi, li)| li + (li - xi).abs() * factor)
        .collect()
}

#[inline]
pub(crate) fn spiral_factor(b: f64, l: f64) -> f64 {
    (b * l).exp() * (2.0 * std::f64::consts::PI * l).cos()
}

/// `X_rand - A * |C * X_rand - X|`.
pub fn search_update(x: &[f64], x_rand: &[f64], a: &[f64], c: &[f64]) -> Vec<f64> {
    encircle_update(x, x_rand, a, c)
}

/// Moves every agent once and clamps it into `bounds`.
///
/// Agents are updated in index order; a random partner drawn for the search
/// branch may already have moved this iteration. Fitness values are left
/// stale for the caller to refresh.
pub fn woa_step(
    pop: &mut Population,
    leader: &[f64],
    t: usize,
    iterations: usize,
    b: f64,
    bounds: &Bounds,
    rng: &mut RngStream,
) {
    let a = linear_a(t, iterations);
    let a1 = spiral_a1(t, iterations);
    let n = pop.len();
    for i in 0..n {
        let k = coefficients(a, a1, bounds.dim(), rng);
        let x = &pop.agents[i].position;
        let mut next = if k.p < 0.5 {
            if k.a_scalar.abs() < 1.0 {
                encircle_update(x, leader, &k.a_vec, &k.c_vec)
            } else {
                let r = rng.index(n);
                search_update(x, &pop.agents[r].position, &k.a_vec, &k.c_vec)
            }
        } else {
            spiral_update(x, leader, b, k.l)
        };
        bounds.clamp_in_place(&mut next);
        pop.agents[i].position = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linear_a_schedule() {
        assert_eq!(linear_a(0, 100), 2.0);
        assert_eq!(linear_a(50, 100), 1.0);
        assert_eq!(linear_a(100, 100), 0.0);
    }

    #[test]
    fn coefficient_extremes() {
        // A = 2a*r - a at r = 1 gives a; at a = 0 gives 0.
        assert_eq!(2.0 * 2.0 * 1.0 - 2.0, 2.0);
        let mut rng = RngStream::new(1);
        let k = coefficients(0.0, -1.5, 4, &mut rng);
        assert!(k.a_vec.iter().all(|&v| v == 0.0));
        assert_eq!(k.a_scalar, 0.0);
        // l = (a1 - 1) Rand + 1 endpoints
        let a1 = -2.0_f64;
        assert_eq!((a1 - 1.0) * 1.0 + 1.0, -2.0);
        assert_eq!((a1 - 1.0) * 0.0 + 1.0, 1.0);
    }

    #[test]
    fn encircle_examples() {
        assert_eq!(
            encircle_update(&[5.0, -1.0], &[1.0, 2.0], &[0.0, 0.0], &[0.3, 1.9]),
            vec![1.0, 2.0]
        );
        assert_eq!(encircle_update(&[1.0], &[1.0], &[0.7], &[1.0]), vec![1.0]);
        assert_eq!(encircle_update(&[0.0], &[2.0], &[0.5], &[1.0]), vec![1.0]);
    }

    #[test]
    fn spiral_examples() {
        assert_eq!(spiral_update(&[3.0], &[3.0], 1.0, 0.37), vec![3.0]);
        assert_eq!(
            spiral_update(&[0.0, 5.0], &[2.0, 2.0], 1.0, 0.0),
            vec![4.0, 5.0]
        );
        assert_relative_eq!(spiral_factor(1.0, 0.5), -(0.5_f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(
            spiral_factor(1.0, 0.5),
            -1.648_721_270_700_128,
            epsilon = 1e-12
        );
    }

    #[test]
    fn search_examples() {
        assert_eq!(search_update(&[9.0], &[4.0], &[0.0], &[1.7]), vec![4.0]);
        assert_eq!(search_update(&[2.5], &[2.5], &[0.9], &[1.0]), vec![2.5]);
        assert_eq!(search_update(&[0.0], &[4.0], &[-1.0], &[1.0]), vec![8.0]);
    }

    #[test]
    fn zero_a_collapses_encircling_agents() {
        // At t = T, a = 0, so every agent in the p < 0.5 branch lands on the leader.
        let bounds = Bounds::uniform(3, -10.0, 10.0).unwrap();
        let mut rng = RngStream::new(3);
        let mut pop =
            Population::from_positions(crate::init::init_pseudo_random(20, &bounds, &mut rng));
        let leader = vec![1.0, -2.0, 3.0];
        let mut probe = rng.clone();
        woa_step(&mut pop, &leader, 100, 100, 1.0, &bounds, &mut rng);
        for agent in &pop.agents {
            let k = coefficients(0.0, -2.0, 3, &mut probe);
            if k.p < 0.5 {
                assert_eq!(agent.position, leader);
            }
        }
    }

    #[test]
    fn single_agent_search_uses_itself() {
        let bounds = Bounds::uniform(1, -100.0, 100.0).unwrap();
        for seed in 0..200 {
            let mut rng = RngStream::new(seed);
            let mut pop = Population::from_positions(vec![vec![7.0]]);
            let mut probe = rng.clone();
            woa_step(&mut pop, &[0.0], 0, 10, 1.0, &bounds, &mut rng);
            let k = coefficients(2.0, -1.0, 1, &mut probe);
            if k.p < 0.5 && k.a_scalar.abs() >= 1.0 {
                let expected = search_update(&[7.0], &[7.0], &k.a_vec, &k.c_vec);
                assert_eq!(pop.agents[0].position[0], expected[0].clamp(-100.0, 100.0));
            }
        }
    }
}
