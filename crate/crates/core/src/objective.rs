use crate::bounds::Bounds;
use crate::rng::RngStream;

/// A minimization problem: a box plus a penalty-inclusive scalar value.
///
/// The stream argument exists for objectives with intrinsic noise (the
/// quartic-with-noise benchmark); deterministic objectives ignore it.
pub trait Objective: Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    fn dim(&self) -> usize {
        self.bounds().dim()
    }

    fn evaluate(&self, x: &[f64], rng: &mut RngStream) -> f64;
}

/// Wraps a closure as an [`Objective`].
pub struct FnObjective<F> {
    name: String,
    bounds: Bounds,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(name: impl Into<String>, bounds: Bounds, f: F) -> Self {
        Self {
            name: name.into(),
            bounds,
            f,
        }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64], _rng: &mut RngStream) -> f64 {
        (self.f)(x)
    }
}
