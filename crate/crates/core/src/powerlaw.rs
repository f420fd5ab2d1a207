//! Power-law profiles `f(x) = |x|^α` on the unit ball.
//!
//! The substitution `u(r) = w(r^{1+α/2})` maps the weighted problem in
//! dimension `N` to the constant-profile problem in the (generally
//! fractional) dimension `N(α) = 2(N+α)/(2+α)`, with voltages related by
//! the factor `(1+α/2)²` and centre values preserved. This module also
//! carries the explicit singular extremals and the two-sided envelopes for
//! minimal solutions near a singular pull-in voltage.

use serde::Serialize;

use crate::error::{invalid, PullinError, Result};
use crate::nonlinearity::{Family, Nonlinearity};

/// `(14 + 4√6)/3 ≈ 7.93`: MEMS extremals are singular from this dimension on.
pub fn mems_critical_dimension() -> f64 {
    (14.0 + 4.0 * 6.0_f64.sqrt()) / 3.0
}

/// Exponential extremals on the ball are singular from dimension 10 on.
pub const EXP_CRITICAL_DIMENSION: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformResult {
    pub n_eff: f64,
    pub voltage_factor: f64,
    pub radius_map_exponent: f64,
}

pub fn dim_transform(n: f64, alpha: f64) -> Result<TransformResult> {
    if !(n.is_finite() && n >= 1.0) {
        return Err(invalid("N", n, "dimension must be >= 1"));
    }
    if !(alpha.is_finite() && alpha > -2.0) {
        return Err(invalid("alpha", alpha, "power-law exponent must be > -2"));
    }
    let k = 1.0 + alpha / 2.0;
    Ok(TransformResult {
        n_eff: 2.0 * (n + alpha) / (2.0 + alpha),
        voltage_factor: k * k,
        radius_map_exponent: k,
    })
}

/// `α_N = (3N − 14 − 4√6)/(4 + 2√6)`.
pub fn alpha_critical_mems(n: f64) -> f64 {
    let s6 = 6.0_f64.sqrt();
    (3.0 * n - 14.0 - 4.0 * s6) / (4.0 + 2.0 * s6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Classical,
    Singular,
}

/// Whether the extremal solution of the `|x|^α` problem on the unit ball is
/// classical, decided in the transformed dimension `N(α)`.
pub fn classify_regularity(f: &Nonlinearity, n: f64, alpha: f64) -> Result<Regularity> {
    let t = dim_transform(n, alpha)?;
    match f.family() {
        Family::MemsInversePower { .. } => {
            f.require_mems_p2()?;
            Ok(if t.n_eff < mems_critical_dimension() {
                Regularity::Classical
            } else {
                Regularity::Singular
            })
        }
        Family::Exponential => Ok(if t.n_eff < EXP_CRITICAL_DIMENSION {
            Regularity::Classical
        } else {
            Regularity::Singular
        }),
        Family::PowerGrowth { .. } => {
            if t.n_eff < EXP_CRITICAL_DIMENSION {
                Ok(Regularity::Classical)
            } else {
                Err(PullinError::Unsupported(format!(
                    "regularity of power-growth extremals is undetermined for N(alpha) = {} >= 10",
                    t.n_eff
                )))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtremalProfile {
    /// `u*(r) = 1 − r^b`, `b = (2+α)/3`
    MemsPower { b: f64 },
    /// `u*(r) = −2 ln r`
    Logarithmic,
}

/// An explicit singular extremal pair `(λ*, u*)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SingularExtremal {
    pub nonlinearity: Nonlinearity,
    pub dimension: f64,
    pub alpha: f64,
    pub lambda_star: f64,
    pub profile: ExtremalProfile,
}

impl SingularExtremal {
    pub fn u(&self, r: f64) -> f64 {
        match self.profile {
            ExtremalProfile::MemsPower { b } => 1.0 - r.powf(b),
            ExtremalProfile::Logarithmic => -2.0 * r.ln(),
        }
    }

    pub fn du(&self, r: f64) -> f64 {
        match self.profile {
            ExtremalProfile::MemsPower { b } => -b * r.powf(b - 1.0),
            ExtremalProfile::Logarithmic => -2.0 / r,
        }
    }

    pub fn d2u(&self, r: f64) -> f64 {
        match self.profile {
            ExtremalProfile::MemsPower { b } => -b * (b - 1.0) * r.powf(b - 2.0),
            ExtremalProfile::Logarithmic => 2.0 / (r * r),
        }
    }

    /// `u'' + (N−1)/r u' + λ* r^α F(u)` at `r ∈ (0, 1)`.
    pub fn residual(&self, r: f64) -> f64 {
        let forcing = self.lambda_star * r.powf(self.alpha) * self.nonlinearity.eval_raw(self.u(r));
        self.d2u(r) + (self.dimension - 1.0) / r * self.du(r) + forcing
    }
}

pub fn singular_extremal(f: &Nonlinearity, n: f64, alpha: f64) -> Result<SingularExtremal> {
    if classify_regularity(f, n, alpha)? != Regularity::Singular {
        return Err(PullinError::Unsupported(format!(
            "extremal for {} in N = {n}, alpha = {alpha} is classical; no explicit singular solution",
            f.label()
        )));
    }
    match f.family() {
        Family::MemsInversePower { .. } => Ok(SingularExtremal {
            nonlinearity: *f,
            dimension: n,
            alpha,
            lambda_star: (2.0 + alpha) * (3.0 * n + alpha - 4.0) / 9.0,
            profile: ExtremalProfile::MemsPower { b: (2.0 + alpha) / 3.0 },
        }),
        Family::Exponential => {
            if alpha != 0.0 {
                return Err(PullinError::Unsupported(
                    "explicit exponential extremal only for alpha = 0; use dim_transform".into(),
                ));
            }
            Ok(SingularExtremal {
                nonlinearity: *f,
                dimension: n,
                alpha,
                lambda_star: 2.0 * n - 4.0,
                profile: ExtremalProfile::Logarithmic,
            })
        }
        Family::PowerGrowth { .. } => unreachable!("classify_regularity never reports Singular"),
    }
}

/// Limit `v* = lim dλ u_λ` at the singular extremal (constant profile).
///
/// Exponential: `v* = (r^a − 1)/(2N−4)`, `a = −N/2 + 1 + √(N²−12N+20)/2`.
/// MEMS: `v* = 3(r^a − r^{2/3})/(6N−8)`, `a = −N/2 + 1 + √(9N²−84N+100)/6`;
/// the `r^{2/3}` term is the particular solution of the `(1−u*)^{−2} = r^{−4/3}`
/// forcing.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VStar {
    pub coefficient: f64,
    pub exponent: f64,
    /// Power subtracted inside the bracket (0 for exponential, 2/3 for MEMS).
    pub offset_power: f64,
}

impl VStar {
    pub fn eval(&self, r: f64) -> f64 {
        self.coefficient * (r.powf(self.exponent) - r.powf(self.offset_power))
    }

    pub fn deriv(&self, r: f64) -> f64 {
        let (a, c) = (self.exponent, self.offset_power);
        self.coefficient * (a * r.powf(a - 1.0) - c * r.powf(c - 1.0))
    }

    pub fn second_deriv(&self, r: f64) -> f64 {
        let (a, c) = (self.exponent, self.offset_power);
        self.coefficient * (a * (a - 1.0) * r.powf(a - 2.0) - c * (c - 1.0) * r.powf(c - 2.0))
    }
}

pub fn vstar(f: &Nonlinearity, n: f64) -> Result<VStar> {
    match f.family() {
        Family::Exponential => {
            if !(n >= EXP_CRITICAL_DIMENSION) {
                return Err(invalid("N", n, "exponential v* needs N >= 10"));
            }
            let disc = (n * n - 12.0 * n + 20.0).max(0.0);
            Ok(VStar {
                coefficient: 1.0 / (2.0 * n - 4.0),
                exponent: -n / 2.0 + 1.0 + disc.sqrt() / 2.0,
                offset_power: 0.0,
            })
        }
        Family::MemsInversePower { .. } => {
            f.require_mems_p2()?;
            let crit = mems_critical_dimension();
            if !(n >= crit - 1e-12) {
                return Err(invalid("N", n, format!("MEMS v* needs N >= {crit}")));
            }
            let disc = (9.0 * n * n - 84.0 * n + 100.0).max(0.0);
            Ok(VStar {
                coefficient: 3.0 / (6.0 * n - 8.0),
                exponent: -n / 2.0 + 1.0 + disc.sqrt() / 6.0,
                offset_power: 2.0 / 3.0,
            })
        }
        Family::PowerGrowth { .. } => Err(PullinError::Unsupported("v* is not available for power growth".into())),
    }
}

/// Pointwise envelopes `lower ≤ u_λ ≤ upper` for `0 < λ < λ*` when the
/// extremal on the unit ball is singular (constant profile).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Envelopes {
    pub lambda: f64,
    pub extremal: SingularExtremal,
    pub v_star: VStar,
}

impl Envelopes {
    /// `max(0, u* + (λ − λ*) v*)`.
    pub fn lower(&self, r: f64) -> f64 {
        let v = self.extremal.u(r) + (self.lambda - self.extremal.lambda_star) * self.v_star.eval(r);
        v.max(0.0)
    }

    pub fn upper(&self, r: f64) -> f64 {
        let ls = self.extremal.lambda_star;
        let l = self.lambda;
        match self.extremal.profile {
            ExtremalProfile::MemsPower { .. } => (l / ls).cbrt() * self.extremal.u(r),
            ExtremalProfile::Logarithmic => (ls / (ls - l + l * (-self.extremal.u(r)).exp())).ln(),
        }
    }
}

pub fn asymptotic_envelopes(f: &Nonlinearity, n: f64, lambda: f64) -> Result<Envelopes> {
    let extremal = singular_extremal(f, n, 0.0)?;
    let v_star = vstar(f, n)?;
    if !(lambda > 0.0 && lambda < extremal.lambda_star) {
        return Err(PullinError::BeyondPullIn {
            lambda,
            lambda_star: extremal.lambda_star,
        });
    }
    Ok(Envelopes {
        lambda,
        extremal,
        v_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transform_examples() {
        let t = dim_transform(3.0, 2.0).unwrap();
        assert_eq!(t.n_eff, 2.5);
        let t = dim_transform(2.0, 5.0).unwrap();
        assert_eq!(t.n_eff, 2.0);
        assert_eq!(t.voltage_factor, 12.25);
        let t = dim_transform(4.0, 0.0).unwrap();
        assert_eq!((t.n_eff, t.voltage_factor, t.radius_map_exponent), (4.0, 1.0, 1.0));
        assert!((dim_transform(7.0, 1e7).unwrap().n_eff - 2.0).abs() < 1e-5);
        assert!(dim_transform(3.0, -2.0).is_err());
        assert!(dim_transform(0.5, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn n_eff_monotone_in_alpha(n in 1.0f64..12.0, a in -1.9f64..20.0, da in 0.01f64..5.0) {
            let lo = dim_transform(n, a).unwrap().n_eff;
            let hi = dim_transform(n, a + da).unwrap().n_eff;
            if (n - 2.0).abs() < 1e-12 {
                prop_assert!((lo - 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
            } else if n > 2.0 {
                prop_assert!(hi < lo);
            } else {
                prop_assert!(hi > lo);
            }
        }

        #[test]
        fn envelope_ordering(s in 0.01f64..0.99, r in 0.001f64..1.0, exp_case in any::<bool>()) {
            let (f, n) = if exp_case { (Nonlinearity::exponential(), 11.0) } else { (Nonlinearity::mems_default(), 9.0) };
            let ls = singular_extremal(&f, n, 0.0).unwrap().lambda_star;
            let e = asymptotic_envelopes(&f, n, s * ls).unwrap();
            prop_assert!(e.lower(r) <= e.upper(r) + 1e-12);
        }
    }

    #[test]
    fn critical_alpha_and_classification() {
        let s6 = 6.0_f64.sqrt();
        assert!((alpha_critical_mems(8.0) - (10.0 - 4.0 * s6) / (4.0 + 2.0 * s6)).abs() < 1e-15);
        assert!((alpha_critical_mems(8.0) - 0.0227).abs() < 1e-4);
        let f = Nonlinearity::mems_default();
        assert_eq!(classify_regularity(&f, 8.0, 0.0).unwrap(), Regularity::Singular);
        assert_eq!(classify_regularity(&f, 7.0, 0.0).unwrap(), Regularity::Classical);
        assert_eq!(classify_regularity(&f, 8.0, 0.05).unwrap(), Regularity::Classical);
        let e = Nonlinearity::exponential();
        assert_eq!(classify_regularity(&e, 10.0, 0.0).unwrap(), Regularity::Singular);
        assert_eq!(classify_regularity(&e, 9.0, 0.0).unwrap(), Regularity::Classical);
        // N(α) = 10 at α = (N−10)/4 < 0 for N < 10
        assert_eq!(classify_regularity(&e, 6.0, -1.0).unwrap(), Regularity::Singular);
        assert_eq!(classify_regularity(&e, 6.0, -0.9).unwrap(), Regularity::Classical);
        assert!(classify_regularity(&Nonlinearity::mems(3.0).unwrap(), 3.0, 0.0).is_err());
    }

    #[test]
    fn explicit_extremals() {
        let f = Nonlinearity::mems_default();
        let s = singular_extremal(&f, 8.0, 0.0).unwrap();
        assert!((s.lambda_star - 40.0 / 9.0).abs() < 1e-14);
        let s = singular_extremal(&f, 9.0, 0.0).unwrap();
        assert!((s.lambda_star - 46.0 / 9.0).abs() < 1e-14);
        let e = singular_extremal(&Nonlinearity::exponential(), 10.0, 0.0).unwrap();
        assert_eq!(e.lambda_star, 16.0);
        assert!((e.u(0.5) - 2.0 * 2.0_f64.ln()).abs() < 1e-15);
        assert!(singular_extremal(&f, 7.0, 0.0).is_err());
        assert!(singular_extremal(&Nonlinearity::exponential(), 12.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_derivatives_match_differences() {
        let f = Nonlinearity::mems_default();
        let s = singular_extremal(&f, 8.0, 0.01).unwrap();
        let h = 1e-4;
        for r in [0.1, 0.4, 0.9] {
            let d1 = (s.u(r + h) - s.u(r - h)) / (2.0 * h);
            let d2 = (s.u(r + h) - 2.0 * s.u(r) + s.u(r - h)) / (h * h);
            assert!((d1 - s.du(r)).abs() < 1e-6);
            assert!((d2 - s.d2u(r)).abs() < 1e-4);
        }
    }

    #[test]
    fn vstar_boundary_and_sign() {
        for (f, n) in [(Nonlinearity::exponential(), 12.0), (Nonlinearity::mems_default(), 10.0)] {
            let v = vstar(&f, n).unwrap();
            assert_eq!(v.eval(1.0), 0.0);
            for r in [0.01, 0.2, 0.5, 0.99] {
                assert!(v.eval(r) > 0.0);
            }
        }
        assert!(vstar(&Nonlinearity::exponential(), 9.0).is_err());
        assert!(vstar(&Nonlinearity::mems_default(), 7.5).is_err());
    }

    #[test]
    fn exponential_vstar_n12_value() {
        // a = −5 + √20/2 = −5 + √5; v*(0.5) = (0.5^a − 1)/20, evaluated independently
        let a = -5.0 + 5.0_f64.sqrt();
        let expected = ((-a * 2.0_f64.ln()).exp() - 1.0) / 20.0;
        let v = vstar(&Nonlinearity::exponential(), 12.0).unwrap();
        assert!((v.exponent - a).abs() < 1e-15);
        assert!((v.eval(0.5) - expected).abs() < 1e-14);
    }

    /// `v*` solves `−Δv = F(u*) + λ* F′(u*) v` with the explicit extremal.
    #[test]
    fn vstar_solves_linearised_equation() {
        for (f, n) in [
            (Nonlinearity::mems_default(), 10.0),
            (Nonlinearity::mems_default(), 9.0),
            (Nonlinearity::exponential(), 12.0),
            (Nonlinearity::exponential(), 10.0),
        ] {
            let s = singular_extremal(&f, n, 0.0).unwrap();
            let v = vstar(&f, n).unwrap();
            for i in 0..200 {
                let r = 0.05 + (0.999 - 0.05) * i as f64 / 199.0;
                let lap = v.second_deriv(r) + (n - 1.0) / r * v.deriv(r);
                let u = s.u(r);
                let rhs = f.eval_raw(u) + s.lambda_star * f.deriv_raw(u) * v.eval(r);
                let scale = rhs.abs().max(1.0);
                assert!((-lap - rhs).abs() / scale < 1e-9, "N={n} r={r}");
            }
        }
    }

    #[test]
    fn envelope_limits() {
        let f = Nonlinearity::mems_default();
        let ls = 46.0 / 9.0;
        let e = asymptotic_envelopes(&f, 9.0, ls * (1.0 - 1e-9)).unwrap();
        for r in [0.1, 0.5, 1.0] {
            assert!((e.upper(r) - e.extremal.u(r)).abs() < 1e-8);
            assert!((e.lower(r) - e.extremal.u(r)).abs() < 1e-6);
        }
        let e = asymptotic_envelopes(&f, 9.0, 1e-9).unwrap();
        assert!(e.upper(0.3) < 1e-3);
        assert!(asymptotic_envelopes(&f, 9.0, ls).is_err());
        assert!(asymptotic_envelopes(&f, 7.0, 1.0).is_err());
    }
}
