//! Box-shaped search spaces and the clamping repair applied after every move.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-dimension lower and upper limits, `lower[d] < upper[d]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidParameter(
                "bounds must have dimension >= 1".into(),
            ));
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "bounds[{d}]: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval repeated in every dimension.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    /// Clamp in place; callers guarantee the length matches.
    #[inline]
    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            // NaN coordinates fall back to the lower bound instead of leaking through.
            *v = if v.is_nan() { *lo } else { v.max(*lo).min(*hi) };
        }
    }
}

/// Component-wise `min(upper, max(lower, x))`.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    bounds.check_dim(x.len())?;
    let mut out = x.to_vec();
    bounds.clamp_in_place(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamp_examples() {
        let unit = Bounds::uniform(1, 0.0, 1.0).unwrap();
        assert_eq!(clamp_to_bounds(&[0.5], &unit).unwrap(), vec![0.5]);
        assert_eq!(clamp_to_bounds(&[1.7], &unit).unwrap(), vec![1.0]);
        let b = Bounds::uniform(2, 0.0, 10.0).unwrap();
        assert_eq!(clamp_to_bounds(&[-3.0, 12.0], &b).unwrap(), vec![0.0, 10.0]);
    }

    #[test]
    fn clamp_rejects_wrong_length() {
        let b = Bounds::uniform(2, 0.0, 1.0).unwrap();
        assert!(matches!(
            clamp_to_bounds(&[0.1], &b),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn in_range_passes_through_bitwise() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let x = [0.1 + 0.2, -0.999_999_999, 1.0];
        let y = clamp_to_bounds(&x, &b).unwrap();
        for (a, c) in x.iter().zip(&y) {
            assert_eq!(a.to_bits(), c.to_bits());
        }
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(Bounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![f64::NEG_INFINITY], vec![0.0]).is_err());
    }
}
