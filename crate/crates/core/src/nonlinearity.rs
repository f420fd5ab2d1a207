//! The three nonlinearity families `F` and their scalar constants.
//!
//! Every family satisfies `F(0) = 1` and is increasing and convex on its
//! domain `[0, a_F)`, with `a_F = ∞` (regular) or `a_F = 1` (singular).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, PullinError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `F(u) = e^u`
    Exponential,
    /// `F(u) = (1 − u)^{−p}`, `p > 0`
    MemsInversePower { p: f64 },
    /// `F(u) = (1 + u)^p`, `p > 1`
    PowerGrowth { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Nonlinearity {
    family: Family,
}

impl Nonlinearity {
    pub fn exponential() -> Self {
        Self {
            family: Family::Exponential,
        }
    }

    pub fn mems(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(invalid("p", p, "MEMS exponent must be > 0"));
        }
        Ok(Self {
            family: Family::MemsInversePower { p },
        })
    }

    /// The standard MEMS nonlinearity `(1 − u)^{−2}`.
    pub fn mems_default() -> Self {
        Self {
            family: Family::MemsInversePower { p: 2.0 },
        }
    }

    pub fn power_growth(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(invalid("p", p, "power-growth exponent must be > 1"));
        }
        Ok(Self {
            family: Family::PowerGrowth { p },
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Right endpoint `a_F` of the domain.
    pub fn domain_end(&self) -> f64 {
        match self.family {
            Family::MemsInversePower { .. } => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.family, Family::MemsInversePower { .. })
    }

    /// Rejects anything but `(1 − u)^{−2}`; several estimates are only
    /// established for that exponent.
    pub fn require_mems_p2(&self) -> Result<()> {
        match self.family {
            Family::MemsInversePower { p: 2.0 } => Ok(()),
            Family::MemsInversePower { p } => Err(invalid("p", p, "only p = 2 is supported for this estimate")),
            _ => Err(PullinError::Unsupported(format!(
                "estimate requires the MEMS nonlinearity (1-u)^-2, got {}",
                self.label()
            ))),
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Exponential => "exp".into(),
            Family::MemsInversePower { p } => format!("mems(p={p})"),
            Family::PowerGrowth { p } => format!("power(p={p})"),
        }
    }

    fn check(&self, u: f64) -> Result<()> {
        if u.is_nan() || u < 0.0 || u >= self.domain_end() {
            return Err(PullinError::Domain {
                what: "u",
                value: u,
                end: self.domain_end(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        self.check(u)?;
        Ok(self.eval_raw(u))
    }

    pub fn eval_deriv(&self, u: f64) -> Result<f64> {
        self.check(u)?;
        Ok(self.deriv_raw(u))
    }

    pub fn eval_second_deriv(&self, u: f64) -> Result<f64> {
        self.check(u)?;
        Ok(match self.family {
            Family::Exponential => u.exp(),
            Family::MemsInversePower { p } => p * (p + 1.0) * (1.0 - u).powf(-p - 2.0),
            Family::PowerGrowth { p } => p * (p - 1.0) * (1.0 + u).powf(p - 2.0),
        })
    }

    /// `F(u)` without a domain check. Used inside integrators where trial
    /// stages may leave the domain; the resulting NaN rejects the step.
    #[inline]
    pub(crate) fn eval_raw(&self, u: f64) -> f64 {
        match self.family {
            Family::Exponential => u.exp(),
            Family::MemsInversePower { p } => (1.0 - u).powf(-p),
            Family::PowerGrowth { p } => (1.0 + u).powf(p),
        }
    }

    #[inline]
    pub(crate) fn deriv_raw(&self, u: f64) -> f64 {
        match self.family {
            Family::Exponential => u.exp(),
            Family::MemsInversePower { p } => p * (1.0 - u).powf(-p - 1.0),
            Family::PowerGrowth { p } => p * (1.0 + u).powf(p - 1.0),
        }
    }

    /// The unique `v ≥ 0` with `F′(v) = z`, or `0` when `z < F′(0)`.
    pub fn eval_fprime_inverse(&self, z: f64) -> Result<f64> {
        if !(z >= 0.0) {
            return Err(invalid("z", z, "argument of (F')^-1 must be >= 0"));
        }
        if z < self.deriv_raw(0.0) {
            return Ok(0.0);
        }
        Ok(match self.family {
            Family::Exponential => z.ln(),
            Family::MemsInversePower { p } => 1.0 - (p / z).powf(1.0 / (p + 1.0)),
            Family::PowerGrowth { p } => (z / p).powf(1.0 / (p - 1.0)) - 1.0,
        })
    }

    /// `(B_F, C_F) = (sup τ/F(τ), ∫₀^{a_F} dτ/F(τ))` in closed form.
    pub fn bf_cf(&self) -> (f64, f64) {
        match self.family {
            Family::Exponential => ((-1.0_f64).exp(), 1.0),
            Family::MemsInversePower { p } => (p.powf(p) / (p + 1.0).powf(p + 1.0), 1.0 / (p + 1.0)),
            Family::PowerGrowth { p } => ((p - 1.0).powf(p - 1.0) / p.powf(p), 1.0 / (p - 1.0)),
        }
    }

    /// The maximiser of `τ/F(τ)`.
    pub fn bf_argmax(&self) -> f64 {
        match self.family {
            Family::Exponential => 1.0,
            Family::MemsInversePower { p } => 1.0 / (p + 1.0),
            Family::PowerGrowth { p } => 1.0 / (p - 1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn families() -> Vec<Nonlinearity> {
        vec![
            Nonlinearity::exponential(),
            Nonlinearity::mems_default(),
            Nonlinearity::mems(0.5).unwrap(),
            Nonlinearity::mems(3.0).unwrap(),
            Nonlinearity::power_growth(2.0).unwrap(),
            Nonlinearity::power_growth(3.5).unwrap(),
        ]
    }

    #[test]
    fn normalised_at_zero() {
        for f in families() {
            assert_eq!(f.eval(0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn increasing_and_convex_on_grid() {
        for f in families() {
            let end = f.domain_end().min(30.0);
            for i in 0..1000 {
                let u = end * i as f64 / 1000.0 * 0.999;
                assert!(f.eval_deriv(u).unwrap() > 0.0);
                assert!(f.eval_second_deriv(u).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn mems_rejects_u_at_or_above_one() {
        let f = Nonlinearity::mems_default();
        assert!(matches!(f.eval(1.0), Err(PullinError::Domain { .. })));
        assert!(f.eval_deriv(1.5).is_err());
        assert!(f.eval(-0.1).is_err());
        assert!(Nonlinearity::exponential().eval(f64::NAN).is_err());
    }

    #[test]
    fn invalid_exponents() {
        assert!(Nonlinearity::mems(0.0).is_err());
        assert!(Nonlinearity::power_growth(1.0).is_err());
        assert!(Nonlinearity::mems(3.0).unwrap().require_mems_p2().is_err());
        assert!(Nonlinearity::exponential().require_mems_p2().is_err());
    }

    #[test]
    fn fprime_inverse_examples() {
        assert_eq!(Nonlinearity::exponential().eval_fprime_inverse(0.5).unwrap(), 0.0);
        // 2/(1-v)^3 = 16 at v = 1/2
        let v = Nonlinearity::mems_default().eval_fprime_inverse(16.0).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert!(Nonlinearity::exponential().eval_fprime_inverse(-1.0).is_err());
    }

    #[test]
    fn bf_cf_closed_forms() {
        let (b, c) = Nonlinearity::mems_default().bf_cf();
        assert!((b - 4.0 / 27.0).abs() < 1e-16 && (c - 1.0 / 3.0).abs() < 1e-16);
        let (b, c) = Nonlinearity::exponential().bf_cf();
        assert!((b - 0.36787944117144233).abs() < 1e-16 && c == 1.0);
        let (b, c) = Nonlinearity::power_growth(2.0).unwrap().bf_cf();
        assert!((b - 0.25).abs() < 1e-16 && (c - 1.0).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn inverse_undoes_derivative_singular(p in 0.3f64..4.0, s in 0.0f64..1.0) {
            let f = Nonlinearity::mems(p).unwrap();
            let u = s * (1.0 - 1e-6);
            let back = f.eval_fprime_inverse(f.eval_deriv(u).unwrap()).unwrap();
            prop_assert!((back - u).abs() < 1e-10);
        }

        #[test]
        fn inverse_undoes_derivative_regular(p in 1.1f64..5.0, u in 0.0f64..50.0) {
            for f in [Nonlinearity::exponential(), Nonlinearity::power_growth(p).unwrap()] {
                let back = f.eval_fprime_inverse(f.eval_deriv(u).unwrap()).unwrap();
                prop_assert!((back - u).abs() < 1e-10);
            }
        }
    }
}
