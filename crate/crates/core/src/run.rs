//! Run configuration, results, and the generic optimization loop.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::init::{init_gns, init_pseudo_random, init_tent};
use crate::mechanisms::{
    cicdwoa_step, hybrid_mutation_pass, CicdwoaParams, MechanismFlags, MutationParams,
};
use crate::objective::Objective;
use crate::population::{diversity, exploration_ratio, Agent, Population};
use crate::rng::RngStream;
use crate::woa::woa_step;

/// Upper bound on recorded search-history points per run.
pub const HISTORY_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "WOA")]
    Woa,
    #[serde(rename = "CICDWOA")]
    Cicdwoa,
    #[serde(rename = "CICDWOA1")]
    Cicdwoa1,
    #[serde(rename = "CICDWOA2")]
    Cicdwoa2,
    #[serde(rename = "CICDWOA3")]
    Cicdwoa3,
    #[serde(rename = "CICDWOA4")]
    Cicdwoa4,
    #[serde(rename = "CICDWOA5")]
    Cicdwoa5,
    #[serde(rename = "CICDWOA6")]
    Cicdwoa6,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::Woa,
        Variant::Cicdwoa,
        Variant::Cicdwoa1,
        Variant::Cicdwoa2,
        Variant::Cicdwoa3,
        Variant::Cicdwoa4,
        Variant::Cicdwoa5,
        Variant::Cicdwoa6,
    ];

    /// The six leave-one-out variants followed by the full algorithm.
    pub const ABLATION: [Variant; 7] = [
        Variant::Cicdwoa1,
        Variant::Cicdwoa2,
        Variant::Cicdwoa3,
        Variant::Cicdwoa4,
        Variant::Cicdwoa5,
        Variant::Cicdwoa6,
        Variant::Cicdwoa,
    ];

    /// Mechanism switches; `None` for plain WOA.
    pub fn flags(self) -> Option<MechanismFlags> {
        match self {
            Variant::Woa => None,
            Variant::Cicdwoa => Some(MechanismFlags::all()),
            Variant::Cicdwoa1 => MechanismFlags::without(1),
            Variant::Cicdwoa2 => MechanismFlags::without(2),
            Variant::Cicdwoa3 => MechanismFlags::without(3),
            Variant::Cicdwoa4 => MechanismFlags::without(4),
            Variant::Cicdwoa5 => MechanismFlags::without(5),
            Variant::Cicdwoa6 => MechanismFlags::without(6),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Woa => "WOA",
            Variant::Cicdwoa => "CICDWOA",
            Variant::Cicdwoa1 => "CICDWOA1",
            Variant::Cicdwoa2 => "CICDWOA2",
            Variant::Cicdwoa3 => "CICDWOA3",
            Variant::Cicdwoa4 => "CICDWOA4",
            Variant::Cicdwoa5 => "CICDWOA5",
            Variant::Cicdwoa6 => "CICDWOA6",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    PseudoRandom,
    Tent,
    Gns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceOptions {
    pub history: bool,
    pub diversity: bool,
    pub exploration: bool,
    pub trajectory: bool,
}

impl TraceOptions {
    pub fn all() -> Self {
        Self {
            history: true,
            diversity: true,
            exploration: true,
            trajectory: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub variant: Variant,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T")]
    pub iterations: usize,
    pub s1: f64,
    pub s2: f64,
    pub b: f64,
    pub seed: u64,
    pub trace: TraceOptions,
    pub mutation: MutationParams,
    /// Overrides the variant's own initializer when set.
    pub init: Option<InitKind>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Cicdwoa,
            n: 30,
            iterations: 500,
            s1: 20.0,
            s2: 25.0,
            b: 1.0,
            seed: 0,
            trace: TraceOptions::default(),
            mutation: MutationParams::default(),
            init: None,
        }
    }
}

impl RunConfig {
    pub fn new(variant: Variant, seed: u64) -> Self {
        Self {
            variant,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        for (name, v) in [("s1", self.s1), ("s2", self.s2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !self.b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "b must be finite, got {}",
                self.b
            )));
        }
        let m = &self.mutation;
        if !(m.sigma.is_finite()
            && m.sigma >= 0.0
            && (0.0..=1.0).contains(&m.alpha)
            && m.cicd_scale > 0.0)
        {
            return Err(Error::InvalidParameter(format!(
                "invalid mutation parameters {m:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryPoint {
    pub iteration: usize,
    pub agent: usize,
    pub position: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration (`T` entries).
    pub convergence: Vec<f64>,
    pub history: Option<Vec<HistoryPoint>>,
    pub diversity: Option<Vec<f64>>,
    pub exploration: Option<Vec<f64>>,
    pub exploitation: Option<Vec<f64>>,
    /// First coordinate of agent 0 after each iteration.
    pub trajectory: Option<Vec<f64>>,
    pub evaluations: u64,
}

fn evaluate_all(
    pop: &mut Population,
    objective: &dyn Objective,
    iteration: usize,
    rng: &mut RngStream,
) -> Result<()> {
    for (i, agent) in pop.agents.iter_mut().enumerate() {
        let f = objective.evaluate(&agent.position, rng);
        if !f.is_finite() {
            return Err(Error::NonFiniteFitness {
                iteration,
                agent: i,
                value: f,
            });
        }
        agent.fitness = f;
    }
    Ok(())
}

/// Runs one optimization: initialization, then `T` iterations of the
/// variant's move, batch evaluation, the optional mutation sweep and a
/// strict-improvement update of the best-ever leader.
pub fn run(objective: &dyn Objective, config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let bounds = objective.bounds();
    let dim = bounds.dim();
    let n = config.n;
    let t_max = config.iterations;
    let mut rng = RngStream::new(config.seed);

    let flags = config.variant.flags();
    let params = CicdwoaParams {
        flags: flags.unwrap_or(MechanismFlags::none()),
        s1: config.s1,
        s2: config.s2,
        b: config.b,
        mutation: config.mutation,
    };
    let init = config.init.unwrap_or(if params.flags.use_gns_init {
        InitKind::Gns
    } else {
        InitKind::PseudoRandom
    });
    let positions = match init {
        InitKind::PseudoRandom => init_pseudo_random(n, bounds, &mut rng),
        InitKind::Tent => init_tent(n, bounds, rng.uniform_open())?,
        InitKind::Gns => init_gns(n, bounds),
    };
    let mut pop = Population::from_positions(positions);
    evaluate_all(&mut pop, objective, 0, &mut rng)?;
    let mut evaluations = n as u64;

    let lead = pop.leader()?;
    let mut best: Agent = pop.agents[lead].clone();

    let trace = config.trace;
    let mut convergence = Vec::with_capacity(t_max);
    let mut div_curve = (trace.diversity || trace.exploration).then(|| Vec::with_capacity(t_max));
    let mut trajectory = trace.trajectory.then(|| Vec::with_capacity(t_max));
    let mut history = trace.history.then(Vec::new);
    let stride = (n * t_max).div_ceil(HISTORY_LIMIT).max(1);

    for t in 0..t_max {
        match flags {
            None => woa_step(
                &mut pop,
                &best.position,
                t,
                t_max,
                config.b,
                bounds,
                &mut rng,
            ),
            Some(_) => cicdwoa_step(
                &mut pop,
                &best.position,
                t,
                t_max,
                &params,
                bounds,
                &mut rng,
            )?,
        }
        evaluate_all(&mut pop, objective, t + 1, &mut rng)?;
        evaluations += n as u64;
        if params.flags.use_hybrid_mutation {
            hybrid_mutation_pass(&mut pop, objective, &params.mutation, t + 1, &mut rng)?;
            if n >= 5 {
                evaluations += n as u64;
            }
        }
        for agent in &pop.agents {
            if agent.fitness < best.fitness {
                best.fitness = agent.fitness;
                best.position.clone_from(&agent.position);
            }
        }
        convergence.push(best.fitness);

        if let Some(curve) = div_curve.as_mut() {
            curve.push(diversity(&pop)?);
        }
        if let Some(tr) = trajectory.as_mut() {
            tr.push(pop.agents[0].position[0]);
        }
        if let Some(h) = history.as_mut() {
            for (i, agent) in pop.agents.iter().enumerate() {
                if (t * n + i).is_multiple_of(stride) {
                    h.push(HistoryPoint {
                        iteration: t + 1,
                        agent: i,
                        position: agent.position.clone(),
                    });
                }
            }
        }
    }
    debug_assert_eq!(best.position.len(), dim);

    let (exploration, exploitation) = match (&div_curve, trace.exploration) {
        (Some(curve), true) => {
            let (e, x) = exploration_ratio(curve);
            (Some(e), Some(x))
        }
        _ => (None, None),
    };
    Ok(RunResult {
        best_position: best.position,
        best_fitness: best.fitness,
        convergence,
        history,
        diversity: if trace.diversity { div_curve } else { None },
        exploration,
        exploitation,
        trajectory,
        evaluations,
    })
}
