//! Nonparametric comparison statistics: Ave/Std, Wilcoxon rank-sum,
//! Friedman mean ranks and win/tie/loss counts.

use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Significance level for the win/tie/loss column.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Mean and sample standard deviation (`n - 1` denominator, 0 for `n = 1`).
pub fn ave_std(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

/// Ascending ranks starting at 1; tied values share the mean of their ranks.
pub fn mid_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // Positions i..j (0-based) hold ranks i+1..=j.
        let r = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

/// Two-sided Wilcoxon rank-sum p-value using the normal approximation with
/// tie-corrected variance and a 0.5 continuity correction. Returns 1 when
/// every value is identical.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter(
            "both samples must be non-empty".into(),
        ));
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = mid_ranks(&pooled);
    let w: f64 = ranks[..a.len()].iter().sum();
    let mu = n1 * (n + 1.0) / 2.0;

    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = if n > 1.0 {
        n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)))
    } else {
        0.0
    };
    if var <= 0.0 {
        return Ok(1.0);
    }
    let z = ((w - mu).abs() - 0.5).max(0.0) / var.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).min(1.0))
}

/// Mean ranks from a `values[algorithm][problem][run]` cube.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanTable {
    /// `per_problem[problem][algorithm]`: rank averaged over runs.
    pub per_problem: Vec<Vec<f64>>,
    /// Average of `per_problem` over problems, per algorithm.
    pub average: Vec<f64>,
    /// 1-based position of each algorithm when sorted by `average`
    /// (ties share the better position).
    pub rank: Vec<usize>,
}

/// Friedman mean ranks. Each `(problem, run)` cell ranks the algorithms
/// (lower fitness is better, ties get mid-ranks); ranks are averaged over
/// runs and then over problems.
pub fn friedman_mean_ranks(values: &[Vec<Vec<f64>>]) -> Result<FriedmanTable> {
    let k = values.len();
    if k == 0 {
        return Err(Error::InvalidParameter("no algorithms".into()));
    }
    let m = values[0].len();
    if m == 0 {
        return Err(Error::InvalidParameter("no problems".into()));
    }
    let r = values[0][0].len();
    for (ai, alg) in values.iter().enumerate() {
        if alg.len() != m || alg.iter().any(|runs| runs.len() != r || r == 0) {
            return Err(Error::InvalidParameter(format!(
                "incomplete sample matrix for algorithm {ai}: expected {m} problems x {r} runs"
            )));
        }
    }
    let mut per_problem = vec![vec![0.0; k]; m];
    for (p, row) in per_problem.iter_mut().enumerate() {
        for run in 0..r {
            let cell: Vec<f64> = values.iter().map(|alg| alg[p][run]).collect();
            for (acc, rank) in row.iter_mut().zip(mid_ranks(&cell)) {
                *acc += rank;
            }
        }
        for v in row.iter_mut() {
            *v /= r as f64;
        }
    }
    let average: Vec<f64> = (0..k)
        .map(|a| per_problem.iter().map(|row| row[a]).sum::<f64>() / m as f64)
        .collect();
    let rank = average
        .iter()
        .map(|&v| 1 + average.iter().filter(|&&w| w < v).count())
        .collect();
    Ok(FriedmanTable {
        per_problem,
        average,
        rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WinTieLoss {
    /// Reference significantly better.
    pub wins: usize,
    pub ties: usize,
    /// Reference significantly worse.
    pub losses: usize,
}

/// Per problem: tie if `p >= alpha`, otherwise a win when the reference
/// algorithm has the better mean and a loss when it does not.
pub fn wtl_classify(p_values: &[f64], reference_better: &[bool], alpha: f64) -> Result<WinTieLoss> {
    if p_values.len() != reference_better.len() {
        return Err(Error::DimensionMismatch {
            expected: p_values.len(),
            found: reference_better.len(),
        });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    let mut out = WinTieLoss::default();
    for (&p, &better) in p_values.iter().zip(reference_better) {
        if p >= alpha {
            out.ties += 1;
        } else if better {
            out.wins += 1;
        } else {
            out.losses += 1;
        }
    }
    Ok(out)
}
