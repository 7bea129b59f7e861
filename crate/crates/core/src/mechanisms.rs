//! CICDWOA: WOA extended with collective cognitive sharing, an adaptive
//! exponential spiral, a Cauchy-perturbed inertia spiral and a DE-based
//! Gaussian-Cauchy mutation. Each mechanism can be switched off to build
//! the leave-one-out variants.

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::population::{population_mean, Population};
use crate::rng::RngStream;
use crate::woa::{
    coefficients, encircle_update, linear_a, search_update, spiral_a1, spiral_factor, spiral_update,
};

/// Which of the six CICDWOA mechanisms are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MechanismFlags {
    pub use_gns_init: bool,
    pub use_nonlinear_a: bool,
    pub use_ccs: bool,
    pub use_aes: bool,
    pub use_enhanced_spiral: bool,
    pub use_hybrid_mutation: bool,
}

impl MechanismFlags {
    pub const fn all() -> Self {
        Self {
            use_gns_init: true,
            use_nonlinear_a: true,
            use_ccs: true,
            use_aes: true,
            use_enhanced_spiral: true,
            use_hybrid_mutation: true,
        }
    }

    pub const fn none() -> Self {
        Self {
            use_gns_init: false,
            use_nonlinear_a: false,
            use_ccs: false,
            use_aes: false,
            use_enhanced_spiral: false,
            use_hybrid_mutation: false,
        }
    }

    /// Full CICDWOA with mechanism `k` (1..=6) removed, numbered
    /// GNS init, nonlinear `a`, CCS, AES, enhanced spiral, mutation.
    pub fn without(k: usize) -> Option<Self> {
        let mut f = Self::all();
        match k {
            1 => f.use_gns_init = false,
            2 => f.use_nonlinear_a = false,
            3 => f.use_ccs = false,
            4 => f.use_aes = false,
            5 => f.use_enhanced_spiral = false,
            6 => f.use_hybrid_mutation = false,
            _ => return None,
        }
        Some(f)
    }
}

impl Default for MechanismFlags {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MutationParams {
    /// Gaussian scale.
    pub sigma: f64,
    /// Weight of the Gaussian term; the Cauchy term gets `1 - alpha`.
    pub alpha: f64,
    /// Location of the leader perturbation distribution.
    pub cicd_loc: f64,
    /// Scale of the leader perturbation distribution.
    pub cicd_scale: f64,
}

impl Default for MutationParams {
    fn default() -> Self {
        Self {
            sigma: 0.1,
            alpha: 0.5,
            cicd_loc: 0.0,
            cicd_scale: 0.01,
        }
    }
}

/// Everything a CICDWOA move needs besides the population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CicdwoaParams {
    pub flags: MechanismFlags,
    pub s1: f64,
    pub s2: f64,
    pub b: f64,
    pub mutation: MutationParams,
}

impl Default for CicdwoaParams {
    fn default() -> Self {
        Self {
            flags: MechanismFlags::all(),
            s1: 20.0,
            s2: 25.0,
            b: 1.0,
            mutation: MutationParams::default(),
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// `a = 2 - 2 / (1 + e^{-s2 (t/T - 0.5)})`, falling from ~2 to ~0.
pub fn nonlinear_a(t: usize, iterations: usize, s2: f64) -> f64 {
    2.0 - 2.0 * sigmoid(s2 * (t as f64 / iterations as f64 - 0.5))
}

/// Sigmoid inertia weight, rising from ~0 to ~1 with `w(T/2) = 0.5`.
pub fn inertia_weight(t: usize, iterations: usize, s1: f64) -> f64 {
    sigmoid(s1 * (t as f64 / iterations as f64 - 0.5))
}

/// Collective cognitive sharing with explicit `G` and `alpha`:
/// `(X + X_mean)/2 + G |alpha X - X*|`.
pub fn ccs_update_with(x: &[f64], mean: &[f64], leader: &[f64], g: f64, alpha: f64) -> Vec<f64> {
    x.iter()
        .zip(mean)
        .zip(leader)
        .map(|((xi, mi), li)| 0.5 * (xi + mi) + g * (alpha * xi - li).abs())
        .collect()
}

/// Draws `g1 = 2 rand - 1` then `alpha = 2 (1 - rand)`; `G = 2 (1 - t/T) g1`.
pub fn ccs_update(
    x: &[f64],
    mean: &[f64],
    leader: &[f64],
    t: usize,
    iterations: usize,
    rng: &mut RngStream,
) -> Vec<f64> {
    let g1 = 2.0 * rng.uniform() - 1.0;
    let alpha = 2.0 * (1.0 - rng.uniform());
    let g = 2.0 * (1.0 - t as f64 / iterations as f64) * g1;
    ccs_update_with(x, mean, leader, g, alpha)
}

/// `Z = e^{cos(pi (1 - t/T))}`.
pub fn aes_z(t: usize, iterations: usize) -> f64 {
    (PI * (1.0 - t as f64 / iterations as f64)).cos().exp()
}

/// Spiral step `h = e^{Z j} cos(2 pi j)`.
pub fn aes_step(z: f64, j: f64) -> f64 {
    (z * j).exp() * (2.0 * PI * j).cos()
}

/// `X* + h |A * |C X* - X||` with an explicit step `h`.
pub fn aes_update_with(x: &[f64], leader: &[f64], a: &[f64], c: &[f64], h: f64) -> Vec<f64> {
    x.iter()
        .zip(leader)
        .zip(a.iter().zip(c))
        .map(|((xi, li), (ai, ci))| li + h * (ai * (ci * li - xi).abs()).abs())
        .collect()
}

/// Adaptive exponential spiral; draws `j = 2 rand - 1`.
pub fn aes_update(
    x: &[f64],
    leader: &[f64],
    a: &[f64],
    c: &[f64],
    t: usize,
    iterations: usize,
    rng: &mut RngStream,
) -> Vec<f64> {
    let j = 2.0 * rng.uniform() - 1.0;
    aes_update_with(x, leader, a, c, aes_step(aes_z(t, iterations), j))
}

/// Inverse-CDF Cauchy sample `loc + scale tan(pi (p - 1/2))` with `p` in (0,1).
pub fn cicd_sample(loc: f64, scale: f64, rng: &mut RngStream) -> f64 {
    cicd_from_p(loc, scale, rng.uniform_open())
}

pub fn cicd_from_p(loc: f64, scale: f64, p: f64) -> f64 {
    loc + scale * (PI * (p - 0.5)).tan()
}

/// `X* cicd + w |X* - X| e^{bl} cos(2 pi l)` with explicit `cicd` and `w`.
pub fn enhanced_spiral_update_with(
    x: &[f64],
    leader: &[f64],
    b: f64,
    l: f64,
    cicd: f64,
    w: f64,
) -> Vec<f64> {
    let factor = w * spiral_factor(b, l);
    x.iter()
        .zip(leader)
        .map(|(xi, li)| li * cicd + (li - xi).abs() * factor)
        .collect()
}

/// Enhanced spiral; draws one CICD sample per call.
#[allow(clippy::too_many_arguments)]
pub fn enhanced_spiral_update(
    x: &[f64],
    leader: &[f64],
    b: f64,
    l: f64,
    t: usize,
    iterations: usize,
    s1: f64,
    params: &MutationParams,
    rng: &mut RngStream,
) -> Vec<f64> {
    let cicd = cicd_sample(params.cicd_loc, params.cicd_scale, rng);
    let w = inertia_weight(t, iterations, s1);
    enhanced_spiral_update_with(x, leader, b, l, cicd, w)
}

/// DE scale factor `F = 1 + tan(pi (Rand - 0.5))`, Rand in (0,1).
pub fn de_scale_factor(rng: &mut RngStream) -> f64 {
    1.0 + (PI * (rng.uniform_open() - 0.5)).tan()
}

/// Four distinct indices in `0..n`, all different from `i`. Needs `n >= 5`.
fn pick_donors(i: usize, n: usize, rng: &mut RngStream) -> [usize; 4] {
    let mut out = [usize::MAX; 4];
    let mut filled = 0;
    while filled < 4 {
        let k = rng.index(n);
        if k != i && !out[..filled].contains(&k) {
            out[filled] = k;
            filled += 1;
        }
    }
    out
}

/// Applies the DE-based Gaussian-Cauchy mutation to every agent in index
/// order, keeping a mutant only when it is strictly better. Agents must carry
/// up-to-date fitness. Returns the number of accepted mutants.
///
/// With fewer than five agents there are not enough distinct donors, so the
/// pass is skipped with a warning.
pub fn hybrid_mutation_pass(
    pop: &mut Population,
    objective: &dyn Objective,
    params: &MutationParams,
    iteration: usize,
    rng: &mut RngStream,
) -> Result<usize> {
    let n = pop.len();
    if n < 5 {
        warn!("mutation pass skipped: population of {n} has fewer than 5 agents");
        return Ok(0);
    }
    let bounds = objective.bounds();
    let mut accepted = 0;
    for i in 0..n {
        let [d, e, f, g] = pick_donors(i, n, rng);
        let scale = de_scale_factor(rng);
        let gauss = params.sigma * rng.normal();
        let cauchy = rng.cauchy();
        let factor = 1.0 + params.alpha * gauss + (1.0 - params.alpha) * cauchy;
        let a = &pop.agents;
        let mut mutant: Vec<f64> = (0..bounds.dim())
            .map(|k| {
                let diff =
                    (a[e].position[k] - a[d].position[k]) + (a[g].position[k] - a[f].position[k]);
                (a[i].position[k] + scale * diff) * factor
            })
            .collect();
        bounds.clamp_in_place(&mut mutant);
        let fit = objective.evaluate(&mutant, rng);
        if !fit.is_finite() {
            return Err(Error::NonFiniteFitness {
                iteration,
                agent: i,
                value: fit,
            });
        }
        if fit < pop.agents[i].fitness {
            pop.agents[i].position = mutant;
            pop.agents[i].fitness = fit;
            accepted += 1;
        }
    }
    Ok(accepted)
}

/// Moves every agent once with the mechanisms enabled in `params.flags`, then
/// clamps. Disabled mechanisms fall back to their WOA counterparts, and with
/// every flag off the draws and results match [`crate::woa::woa_step`].
pub fn cicdwoa_step(
    pop: &mut Population,
    leader: &[f64],
    t: usize,
    iterations: usize,
    params: &CicdwoaParams,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Result<()> {
    let flags = params.flags;
    let a = if flags.use_nonlinear_a {
        nonlinear_a(t, iterations, params.s2)
    } else {
        linear_a(t, iterations)
    };
    let a1 = spiral_a1(t, iterations);
    let mean = if flags.use_ccs {
        population_mean(pop)?
    } else {
        Vec::new()
    };
    let n = pop.len();
    for i in 0..n {
        let k = coefficients(a, a1, bounds.dim(), rng);
        let x = &pop.agents[i].position;
        let mut next = if k.p < 0.5 {
            if k.a_scalar.abs() < 1.0 {
                if flags.use_aes {
                    aes_update(x, leader, &k.a_vec, &k.c_vec, t, iterations, rng)
                } else {
                    encircle_update(x, leader, &k.a_vec, &k.c_vec)
                }
            } else if flags.use_ccs {
                ccs_update(x, &mean, leader, t, iterations, rng)
            } else {
                let r = rng.index(n);
                search_update(x, &pop.agents[r].position, &k.a_vec, &k.c_vec)
            }
        } else if flags.use_enhanced_spiral {
            enhanced_spiral_update(
                x,
                leader,
                params.b,
                k.l,
                t,
                iterations,
                params.s1,
                &params.mutation,
                rng,
            )
        } else {
            spiral_update(x, leader, params.b, k.l)
        };
        bounds.clamp_in_place(&mut next);
        pop.agents[i].position = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nonlinear_a_values() {
        assert_eq!(nonlinear_a(50, 100, 25.0), 1.0);
        assert_relative_eq!(
            nonlinear_a(0, 100, 25.0),
            2.0 - 2.0 / (1.0 + 12.5_f64.exp()),
            epsilon = 1e-15
        );
        assert!(nonlinear_a(0, 100, 25.0) > 1.99999);
        assert_relative_eq!(nonlinear_a(100, 100, 25.0), 7.45e-6, max_relative = 1e-3);
    }

    #[test]
    fn inertia_values() {
        assert_eq!(inertia_weight(250, 500, 20.0), 0.5);
        assert_relative_eq!(inertia_weight(0, 500, 20.0), 4.54e-5, max_relative = 1e-3);
        assert_relative_eq!(inertia_weight(500, 500, 20.0), 0.99995, epsilon = 1e-5);
    }

    #[test]
    fn ccs_examples() {
        // t = T gives G = 0.
        assert_eq!(ccs_update_with(&[4.0], &[2.0], &[9.0], 0.0, 1.3), vec![3.0]);
        assert_eq!(
            ccs_update_with(&[1.5, -2.0], &[1.5, -2.0], &[1.5, -2.0], 0.7, 1.0),
            vec![1.5, -2.0]
        );
        // g1 = 0.5 at t = 0 gives G = 1.
        assert_eq!(
            ccs_update_with(&[2.0], &[0.0], &[1.0], 2.0 * 0.5, 1.0),
            vec![2.0]
        );
    }

    #[test]
    fn ccs_at_end_of_run_ignores_draws() {
        let mut rng = RngStream::new(4);
        assert_eq!(
            ccs_update(&[4.0], &[2.0], &[9.0], 10, 10, &mut rng),
            vec![3.0]
        );
    }

    #[test]
    fn aes_examples() {
        assert_eq!(aes_step(0.9, 0.0), 1.0);
        // h = 1 gives X* + |A * D|.
        assert_eq!(
            aes_update_with(&[0.0], &[2.0], &[-0.5], &[1.0], 1.0),
            vec![3.0]
        );
        assert_relative_eq!(aes_z(0, 10), (-1.0_f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(aes_z(10, 10), 1.0_f64.exp(), epsilon = 1e-15);
        assert_eq!(
            aes_update_with(&[1.0, 2.0], &[1.0, 2.0], &[0.4, 0.4], &[1.0, 1.0], 2.0),
            vec![1.0, 2.0]
        );
    }

    #[test]
    fn cicd_examples() {
        assert_eq!(cicd_from_p(0.0, 0.01, 0.5), 0.0);
        assert_relative_eq!(cicd_from_p(0.0, 0.01, 0.75), 0.01, epsilon = 1e-15);
        assert_relative_eq!(cicd_from_p(0.0, 0.01, 0.25), -0.01, epsilon = 1e-15);
    }

    #[test]
    fn cicd_median_magnitude() {
        let mut rng = RngStream::new(11);
        let mut xs: Vec<f64> = (0..100_000)
            .map(|_| cicd_sample(0.0, 0.01, &mut rng).abs())
            .collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[50_000] / 0.01 - 1.0).abs() < 0.05);
    }

    #[test]
    fn enhanced_spiral_examples() {
        assert_eq!(
            enhanced_spiral_update_with(&[3.0], &[3.0], 1.0, 0.2, 0.0, 0.4),
            vec![0.0]
        );
        assert_eq!(
            enhanced_spiral_update_with(&[0.0], &[2.0], 1.0, 0.0, 0.0, 0.5),
            vec![1.0]
        );
    }

    #[test]
    fn de_scale_examples() {
        assert_eq!(1.0 + (PI * (0.5_f64 - 0.5)).tan(), 1.0);
        assert_relative_eq!(1.0 + (PI * (0.75_f64 - 0.5)).tan(), 2.0, epsilon = 1e-15);
        assert_relative_eq!(1.0 + (PI * (0.25_f64 - 0.5)).tan(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ablation_flags_follow_numbering() {
        assert!(!MechanismFlags::without(1).unwrap().use_gns_init);
        assert!(!MechanismFlags::without(2).unwrap().use_nonlinear_a);
        assert!(!MechanismFlags::without(3).unwrap().use_ccs);
        assert!(!MechanismFlags::without(4).unwrap().use_aes);
        assert!(!MechanismFlags::without(5).unwrap().use_enhanced_spiral);
        assert!(!MechanismFlags::without(6).unwrap().use_hybrid_mutation);
        assert!(MechanismFlags::without(0).is_none());
        assert!(MechanismFlags::without(7).is_none());
        for k in 1..=6 {
            let f = MechanismFlags::without(k).unwrap();
            let on = [
                f.use_gns_init,
                f.use_nonlinear_a,
                f.use_ccs,
                f.use_aes,
                f.use_enhanced_spiral,
                f.use_hybrid_mutation,
            ];
            assert_eq!(on.iter().filter(|&&b| !b).count(), 1);
        }
    }

    #[test]
    fn donors_are_distinct() {
        let mut rng = RngStream::new(2);
        for i in 0..5 {
            let d = pick_donors(i, 5, &mut rng);
            let mut s = d.to_vec();
            s.push(i);
            s.sort();
            assert_eq!(s, vec![0, 1, 2, 3, 4]);
        }
    }
}
