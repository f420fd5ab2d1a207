use serde::Serialize;

use crate::error::{PullinError, Result};
use crate::numerics::ode::Sample;

/// A radial function sampled at increasing radii together with its exact
/// derivative, interpolated by cubic Hermite splines.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    r: Vec<f64>,
    u: Vec<f64>,
    du: Vec<f64>,
}

impl RadialProfile {
    pub fn new(r: Vec<f64>, u: Vec<f64>, du: Vec<f64>) -> Self {
        debug_assert!(r.len() == u.len() && u.len() == du.len() && r.len() >= 2);
        debug_assert!(r.windows(2).all(|w| w[1] > w[0]));
        Self { r, u, du }
    }

    /// Build from integrator samples of a `[value, derivative]` state,
    /// prefixed by the exact centre value (`u(0) = centre`, `u′(0) = 0`).
    pub(crate) fn from_samples(centre: f64, samples: &[Sample<2>]) -> Self {
        let mut r = Vec::with_capacity(samples.len() + 1);
        let mut u = Vec::with_capacity(samples.len() + 1);
        let mut du = Vec::with_capacity(samples.len() + 1);
        r.push(0.0);
        u.push(centre);
        du.push(0.0);
        for s in samples {
            if s.r > *r.last().unwrap() {
                r.push(s.r);
                u.push(s.y[0]);
                du.push(s.y[1]);
            }
        }
        Self { r, u, du }
    }

    /// Rescale the radius by `1/scale` (so `[0, scale]` maps to `[0, 1]`).
    pub(crate) fn rescaled(&self, scale: f64) -> Self {
        Self {
            r: self.r.iter().map(|r| r / scale).collect(),
            u: self.u.clone(),
            du: self.du.iter().map(|d| d * scale).collect(),
        }
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub fn slopes(&self) -> &[f64] {
        &self.du
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().unwrap()
    }

    fn locate(&self, r: f64) -> Result<usize> {
        let hi = self.r_max();
        let tol = 1e-12 * hi.max(1.0);
        if !(r >= -tol && r <= hi + tol) {
            return Err(PullinError::OutOfRange { r, lo: 0.0, hi });
        }
        let i = self.r.partition_point(|&x| x <= r);
        Ok(i.clamp(1, self.r.len() - 1) - 1)
    }

    fn hermite(&self, i: usize, r: f64) -> (f64, f64) {
        let (r0, r1) = (self.r[i], self.r[i + 1]);
        let h = r1 - r0;
        let s = ((r - r0) / h).clamp(0.0, 1.0);
        let (p0, p1) = (self.u[i], self.u[i + 1]);
        let (m0, m1) = (self.du[i] * h, self.du[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let val = (2.0 * s3 - 3.0 * s2 + 1.0) * p0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * p1
            + (s3 - s2) * m1;
        let der = ((6.0 * s2 - 6.0 * s) * p0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * p1
            + (3.0 * s2 - 2.0 * s) * m1)
            / h;
        (val, der)
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        let i = self.locate(r)?;
        Ok(self.hermite(i, r).0)
    }

    pub fn eval_deriv(&self, r: f64) -> Result<f64> {
        let i = self.locate(r)?;
        Ok(self.hermite(i, r).1)
    }

    /// Interpolated value with the argument clamped into range.
    pub(crate) fn eval_clamped(&self, r: f64) -> f64 {
        let r = r.clamp(0.0, self.r_max());
        let i = self.r.partition_point(|&x| x <= r).clamp(1, self.r.len() - 1) - 1;
        self.hermite(i, r).0
    }

    /// Strictly decreasing on the sampled points.
    pub fn is_strictly_decreasing(&self) -> bool {
        self.u.windows(2).all(|w| w[1] < w[0])
    }
}
