//! Agents, populations and the population-level statistics used for traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub position: Vec<f64>,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Population {
    pub agents: Vec<Agent>,
}

impl Population {
    pub fn new(agents: Vec<Agent>) -> Self {
        Self { agents }
    }

    /// Builds agents with `+inf` fitness from raw positions.
    pub fn from_positions(positions: Vec<Vec<f64>>) -> Self {
        Self {
            agents: positions
                .into_iter()
                .map(|position| Agent {
                    position,
                    fitness: f64::INFINITY,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    /// Index of the lowest fitness; ties keep the earliest agent.
    pub fn leader(&self) -> Result<usize> {
        if self.agents.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        let mut best = 0;
        for (i, a) in self.agents.iter().enumerate().skip(1) {
            if a.fitness < self.agents[best].fitness {
                best = i;
            }
        }
        Ok(best)
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.agents.iter().map(|a| a.position.as_slice())
    }
}

/// Component-wise mean of all agent positions.
pub fn population_mean(pop: &Population) -> Result<Vec<f64>> {
    mean_of(pop.positions())
}

pub(crate) fn mean_of<'a>(mut rows: impl Iterator<Item = &'a [f64]>) -> Result<Vec<f64>> {
    let first = rows.next().ok_or(Error::EmptyPopulation)?;
    let mut sum = first.to_vec();
    let mut n = 1usize;
    for row in rows {
        if row.len() != sum.len() {
            return Err(Error::DimensionMismatch {
                expected: sum.len(),
                found: row.len(),
            });
        }
        for (s, v) in sum.iter_mut().zip(row) {
            *s += v;
        }
        n += 1;
    }
    for s in &mut sum {
        *s /= n as f64;
    }
    Ok(sum)
}

/// Mean Euclidean distance of the agents to their centroid.
pub fn diversity(pop: &Population) -> Result<f64> {
    let centroid = population_mean(pop)?;
    let total: f64 = pop
        .positions()
        .map(|x| {
            x.iter()
                .zip(&centroid)
                .map(|(a, c)| (a - c) * (a - c))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    Ok(total / pop.len() as f64)
}

/// Normalizes a diversity curve by its maximum: returns
/// `(exploration%, exploitation%)` with `exploitation = 100 - exploration`.
pub fn exploration_ratio(div_curve: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let max = div_curve.iter().cloned().fold(0.0_f64, f64::max);
    let explore: Vec<f64> = div_curve
        .iter()
        .map(|d| if max > 0.0 { 100.0 * d / max } else { 0.0 })
        .collect();
    let exploit = explore.iter().map(|e| 100.0 - e).collect();
    (explore, exploit)
}
