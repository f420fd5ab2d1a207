//! Analytic estimates for the pull-in voltage and pull-in distance.
//!
//! General-domain bounds take a [`DomainStats`] (λ₁(Ω), |Ω|, and the
//! relevant moments of the profile `f`); on the unit ball those come from
//! [`crate::spectral`]. Constants defined as an infimum over `t` are
//! minimised with [`minimize_open_interval`] and report the optimiser.

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{invalid, PullinError, Result};
use crate::nonlinearity::{Family, Nonlinearity};
use crate::numerics::optim::{brent_root, minimize_open_interval};
use crate::numerics::quad;
use crate::spectral::{lambda1_ball, profile_weight_ratio};

const GRID: usize = 2000;

fn sqrt6() -> f64 {
    6.0_f64.sqrt()
}

/// `ω_N = π^{N/2}/Γ(N/2 + 1)`, the volume of the unit ball, for real `N > 0`.
pub fn volume_unit_ball(n: f64) -> f64 {
    std::f64::consts::PI.powf(n / 2.0) / gamma(n / 2.0 + 1.0)
}

/// Geometric and profile data entering the general-domain estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainStats {
    pub lambda1: f64,
    pub volume: f64,
    pub dimension: f64,
    pub inf_f: f64,
    /// May be `+∞` for profiles unbounded at the origin.
    pub sup_f: f64,
    /// `∫_Ω f φ_Ω` with `∫_Ω φ_Ω = 1`.
    pub f_phi_integral: f64,
}

impl DomainStats {
    pub fn new(lambda1: f64, volume: f64, dimension: f64, inf_f: f64, sup_f: f64, f_phi_integral: f64) -> Result<Self> {
        if !(lambda1.is_finite() && lambda1 > 0.0) {
            return Err(invalid("lambda1", lambda1, "must be finite and > 0"));
        }
        if !(volume.is_finite() && volume > 0.0) {
            return Err(invalid("volume", volume, "must be finite and > 0"));
        }
        if !(dimension.is_finite() && dimension >= 1.0) {
            return Err(invalid("N", dimension, "dimension must be >= 1"));
        }
        if !(inf_f.is_finite() && inf_f >= 0.0) {
            return Err(invalid("inf_f", inf_f, "must be finite and >= 0"));
        }
        if !(sup_f > 0.0) {
            return Err(invalid("sup_f", sup_f, "must be > 0"));
        }
        let slack = 1e-9 * sup_f.clamp(1.0, 1e300);
        if !(f_phi_integral >= inf_f - slack && f_phi_integral <= sup_f + slack) {
            return Err(invalid(
                "f_phi_integral",
                f_phi_integral,
                "must lie between inf_f and sup_f",
            ));
        }
        Ok(Self {
            lambda1,
            volume,
            dimension,
            inf_f,
            sup_f,
            f_phi_integral,
        })
    }

    /// Unit ball in dimension `N` with `f(x) = |x|^α`.
    pub fn unit_ball(n: f64, alpha: f64, tol: f64) -> Result<Self> {
        let lambda1 = lambda1_ball(n, tol)?.eigenvalue;
        let weighted = profile_weight_ratio(n, alpha, tol)?;
        let (inf_f, sup_f) = if alpha > 0.0 {
            (0.0, 1.0)
        } else if alpha == 0.0 {
            (1.0, 1.0)
        } else {
            (1.0, f64::INFINITY)
        };
        Self::new(lambda1, volume_unit_ball(n), n, inf_f, sup_f, weighted)
    }

    /// `|Ω|/ω_N`.
    fn volume_ratio(&self) -> f64 {
        self.volume / volume_unit_ball(self.dimension)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    /// Minimising `t` (or `τ`) for constants defined by an infimum.
    pub optimizer: Option<f64>,
    pub valid: bool,
    /// Why the hypotheses fail when `valid` is false; `value` is then formal.
    pub reason: Option<String>,
    /// The inequality or definition evaluated.
    pub basis: String,
}

impl BoundReport {
    fn new(name: &str, value: f64, basis: &str) -> Self {
        Self {
            name: name.into(),
            value,
            optimizer: None,
            valid: true,
            reason: None,
            basis: basis.into(),
        }
    }

    fn with_optimizer(mut self, t: Option<f64>) -> Self {
        self.optimizer = t;
        self
    }

    fn flag(mut self, ok: bool, reason: impl FnOnce() -> String) -> Self {
        if !ok {
            self.valid = false;
            self.reason = Some(reason());
        }
        self
    }
}

/// `λ* ≤ λ₁ min{B_F / inf f, C_F / ∫ f φ}`; a term with zero denominator is dropped.
pub fn pullin_voltage_upper(f: &Nonlinearity, stats: &DomainStats) -> BoundReport {
    let (b, c) = f.bf_cf();
    let t1 = if stats.inf_f > 0.0 { b / stats.inf_f } else { f64::INFINITY };
    let t2 = if stats.f_phi_integral > 0.0 {
        c / stats.f_phi_integral
    } else {
        f64::INFINITY
    };
    BoundReport::new(
        "pullin_voltage_upper",
        stats.lambda1 * t1.min(t2),
        "lambda* <= lambda1 * min(B_F / inf f, C_F / int f phi)",
    )
    .flag(t1.is_finite() || t2.is_finite(), || "both terms are infinite".into())
}

/// `‖u*‖ ≥ (F′)^{−1}(max{(1/B_F) inf f/sup f, (1/C_F) ∫fφ/sup f})`.
pub fn pullin_distance_lower(f: &Nonlinearity, stats: &DomainStats) -> BoundReport {
    let (b, c) = f.bf_cf();
    let z = (stats.inf_f / stats.sup_f / b).max(stats.f_phi_integral / stats.sup_f / c);
    let value = f.eval_fprime_inverse(z).unwrap_or(0.0);
    BoundReport::new(
        "pullin_distance_lower",
        value,
        "|u*| >= (F')^-1(max(inf f / (B_F sup f), int f phi / (C_F sup f))), extremal assumed classical",
    )
}

/// The per-family closed forms of [`pullin_distance_lower`], as reference
/// (for MEMS the minimum of the two displayed expressions).
pub fn pullin_distance_lower_closed_form(f: &Nonlinearity, stats: &DomainStats) -> BoundReport {
    let ratio_inf = stats.inf_f / stats.sup_f;
    let ratio_phi = stats.f_phi_integral / stats.sup_f;
    let (value, basis) = match f.family() {
        Family::MemsInversePower { p } => {
            let q = p / (p + 1.0);
            let a = q * (1.0 / ratio_inf).powf(1.0 / (p + 1.0));
            let b = (q / ratio_phi).powf(1.0 / (p + 1.0));
            (
                1.0 - a.min(b),
                "|u*| >= 1 - min(p/(p+1) (sup f/inf f)^(1/(p+1)), (p/(p+1) sup f / int f phi)^(1/(p+1)))",
            )
        }
        Family::PowerGrowth { p } => {
            let a = p / (p - 1.0) * ratio_inf.powf(1.0 / (p - 1.0));
            let b = ((p - 1.0) / p * ratio_phi).powf(1.0 / (p - 1.0));
            (
                a.max(b) - 1.0,
                "|u*| >= max(p/(p-1) (inf f/sup f)^(1/(p-1)), ((p-1)/p int f phi / sup f)^(1/(p-1))) - 1",
            )
        }
        Family::Exponential => (
            (1.0 + ratio_inf.ln()).max(ratio_phi.ln()),
            "|u*| >= max(1 + ln(inf f / sup f), ln(int f phi / sup f))",
        ),
    };
    BoundReport::new("pullin_distance_lower_closed_form", value, basis)
}

/// Necessary condition `λ₁ ≤ λ* sup f F′(‖u*‖)` for a semi-stable extremal.
pub fn stability_necessary_check(
    f: &Nonlinearity,
    stats: &DomainStats,
    lambda_star: f64,
    u_star_norm: f64,
) -> Result<bool> {
    if !(lambda_star >= 0.0) {
        return Err(invalid("lambda_star", lambda_star, "must be >= 0"));
    }
    if !(u_star_norm >= 0.0) {
        return Err(invalid("u_star_norm", u_star_norm, "must be >= 0"));
    }
    if lambda_star == 0.0 {
        return Ok(false);
    }
    let fp = if u_star_norm >= f.domain_end() {
        f64::INFINITY
    } else {
        f.deriv_raw(u_star_norm)
    };
    Ok(stats.lambda1 <= lambda_star * stats.sup_f * fp)
}

fn infimum<F: Fn(f64) -> f64 + Sync>(obj: F, lo: f64, hi: f64) -> Option<(f64, f64)> {
    minimize_open_interval(obj, lo, hi, GRID)
}

/// `N^{−1/(2t+1)} (2t/(4t+2−N))^{2t/(2t+1)} (4/(2−t))^{1/t}`.
pub fn beta_objective(n: f64, t: f64) -> f64 {
    let e = 2.0 * t + 1.0;
    n.powf(-1.0 / e) * (2.0 * t / (4.0 * t + 2.0 - n)).powf(2.0 * t / e) * (4.0 / (2.0 - t)).powf(1.0 / t)
}

pub fn beta_window(n: f64) -> (f64, f64) {
    ((n - 2.0) / 4.0, 2.0)
}

/// `β_N = inf over (N−2)/4 < t < 2` of [`beta_objective`].
pub fn beta_n(n: f64) -> BoundReport {
    let (lo, hi) = beta_window(n);
    let lo = lo.max(0.0);
    let basis = "beta_N = inf_t N^(-1/(2t+1)) (2t/(4t+2-N))^(2t/(2t+1)) (4/(2-t))^(1/t), (N-2)/4 < t < 2";
    match infimum(|t| beta_objective(n, t), lo, hi) {
        Some((t, v)) => BoundReport::new("beta_N", v, basis)
            .with_optimizer(Some(t))
            .flag((3.0..=9.0).contains(&n), || format!("estimate established for 3 <= N <= 9, got N = {n}")),
        None => BoundReport::new("beta_N", f64::NAN, basis).flag(false, || format!("empty t-window for N = {n}")),
    }
}

/// `‖u*‖ ≤ λ₁ β_N/(e(N−2)) (|Ω|/ω_N)^{2/N}` for `F = e^u`, `f ≡ 1`, `3 ≤ N ≤ 9`.
pub fn exp_upper_bound(stats: &DomainStats) -> BoundReport {
    let n = stats.dimension;
    let beta = beta_n(n);
    let value = stats.lambda1 * beta.value / (std::f64::consts::E * (n - 2.0)) * stats.volume_ratio().powf(2.0 / n);
    BoundReport::new(
        "exp_upper_bound",
        value,
        "|u*| <= lambda1 beta_N / (e (N-2)) (|Omega|/omega_N)^(2/N)",
    )
    .with_optimizer(beta.optimizer)
    .flag(beta.valid, || beta.reason.clone().unwrap_or_default())
}

/// `Λ(p, R) = ∫₀^R (−ln r)^p r dr` for `p ≥ 0`, `0 < R ≤ 1`.
pub fn lambda_p_r(p: f64, r: f64) -> Result<f64> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(invalid("p", p, "must be >= 0"));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(invalid("R", r, "must lie in (0, 1]"));
    }
    let q = quad::integrate(|s: f64| (-s.ln()).powf(p) * s, 0.0, r, 1e-15, 1e-12)?;
    Ok(q.value)
}

/// Planar exponential bound for `Ω ⊂ B_{1/2} ⊂ R²`:
/// `‖u*‖ ≤ λ₁/e inf_{0<t<2} (4/(2−t))^{1/t} (|Ω|/2π)^{1/(2t+1)} Λ((2t+1)/(2t), (|Ω|/π)^{1/2})^{2t/(2t+1)}`.
///
/// Containment in the half disc cannot be read off the statistics; the
/// caller asserts it.
pub fn exp_upper_bound_planar(stats: &DomainStats, contained_in_half_disc: bool) -> Result<BoundReport> {
    let pi = std::f64::consts::PI;
    let radius = (stats.volume / pi).sqrt();
    if !(radius <= 1.0) {
        return Err(invalid("volume", stats.volume, "need |Omega| <= pi for the planar estimate"));
    }
    let v = stats.volume;
    let obj = |t: f64| {
        let e = 2.0 * t + 1.0;
        match lambda_p_r(e / (2.0 * t), radius) {
            Ok(l) => (4.0 / (2.0 - t)).powf(1.0 / t) * (v / (2.0 * pi)).powf(1.0 / e) * l.powf(2.0 * t / e),
            Err(_) => f64::NAN,
        }
    };
    let (t, m) = infimum(obj, 0.0, 2.0).ok_or(PullinError::BracketFailure { what: "planar exponential bound" })?;
    let in_window = (stats.dimension - 2.0).abs() < 1e-12 && contained_in_half_disc && radius <= 0.5;
    Ok(BoundReport::new(
        "exp_upper_bound_planar",
        stats.lambda1 / std::f64::consts::E * m,
        "|u*| <= lambda1/e inf_t (4/(2-t))^(1/t) (|Omega|/2pi)^(1/(2t+1)) Lambda((2t+1)/2t, sqrt(|Omega|/pi))^(2t/(2t+1))",
    )
    .with_optimizer(Some(t))
    .flag(in_window, || "requires N = 2 and Omega inside the disc of radius 1/2".into()))
}

/// `λ₁(Ω) ≥ e(N−2)/β_N (ω_N/|Ω|)^{2/N}` for `3 ≤ N ≤ 9`.
pub fn lambda1_lower_bound(n: f64, volume: f64) -> Result<BoundReport> {
    if !(volume > 0.0 && volume.is_finite()) {
        return Err(invalid("volume", volume, "must be finite and > 0"));
    }
    let beta = beta_n(n);
    let value = std::f64::consts::E * (n - 2.0) / beta.value * (volume_unit_ball(n) / volume).powf(2.0 / n);
    Ok(BoundReport::new(
        "lambda1_lower_bound",
        value,
        "lambda1(Omega) >= e (N-2) / beta_N (omega_N/|Omega|)^(2/N)",
    )
    .with_optimizer(beta.optimizer)
    .flag(beta.valid, || beta.reason.clone().unwrap_or_default()))
}

/// `E(t) = 4(2t+1)/(4t+2−t²)`, positive for `0 < t < 2+√6`.
fn mems_energy_base(t: f64) -> f64 {
    4.0 * (2.0 * t + 1.0) / (4.0 * t + 2.0 - t * t)
}

/// `(8/27) N^{−3/(2t+3)} (2t/(4t+6−3N))^{2t/(2t+3)} E(t)^{3/t}`.
pub fn gamma_objective(n: f64, t: f64) -> f64 {
    let e = 2.0 * t + 3.0;
    8.0 / 27.0
        * n.powf(-3.0 / e)
        * (2.0 * t / (4.0 * t + 6.0 - 3.0 * n)).powf(2.0 * t / e)
        * mems_energy_base(t).powf(3.0 / t)
}

pub fn gamma_window(n: f64) -> (f64, f64) {
    (3.0 * (n - 2.0) / 4.0, 2.0 + sqrt6())
}

/// `γ_N = inf over 3(N−2)/4 < t < 2+√6` of [`gamma_objective`].
pub fn gamma_n(n: f64) -> BoundReport {
    let (lo, hi) = gamma_window(n);
    let lo = lo.max(0.0);
    let basis = "gamma_N = inf_t (8/27) N^(-3/(2t+3)) (2t/(4t+6-3N))^(2t/(2t+3)) (4(2t+1)/(4t+2-t^2))^(3/t), 3(N-2)/4 < t < 2+sqrt6";
    match infimum(|t| gamma_objective(n, t), lo, hi) {
        Some((t, v)) => BoundReport::new("gamma_N", v, basis)
            .with_optimizer(Some(t))
            .flag((3.0..=7.0).contains(&n), || format!("estimate established for 3 <= N <= 7, got N = {n}")),
        None => BoundReport::new("gamma_N", f64::NAN, basis).flag(false, || format!("empty t-window for N = {n}")),
    }
}

/// `‖u*‖ ≤ 1 − exp(−λ₁ γ_N/(2(N−2)) (|Ω|/ω_N)^{2/N})` for MEMS, `f ≡ 1`, `3 ≤ N ≤ 7`.
pub fn mems_upper_general(stats: &DomainStats) -> BoundReport {
    let n = stats.dimension;
    let g = gamma_n(n);
    let expo = stats.lambda1 * g.value / (2.0 * (n - 2.0)) * stats.volume_ratio().powf(2.0 / n);
    BoundReport::new(
        "mems_upper_general",
        1.0 - (-expo).exp(),
        "|u*| <= 1 - exp(-lambda1 gamma_N / (2(N-2)) (|Omega|/omega_N)^(2/N))",
    )
    .with_optimizer(g.optimizer)
    .flag(g.valid, || g.reason.clone().unwrap_or_default())
}

/// `t_p^− = p − √(p²−p)`, `t_p^+ = p + √(p²−p)`, `t_{N,p} = pN/4 − p/2 + 1/2`.
pub fn beta_np_window(n: f64, p: f64) -> (f64, f64) {
    let s = (p * p - p).sqrt();
    let t_np = p * n / 4.0 - p / 2.0 + 0.5;
    ((p - s).max(t_np), p + s)
}

pub fn beta_np_objective(n: f64, p: f64, t: f64) -> f64 {
    let k = 2.0 * t + p - 1.0;
    let num = (2.0 * t * p - p - t * t).powf(-p / t)
        * (2.0 * t - 1.0).powf((2.0 * t - 1.0) / k + p / t)
        * (2.0 * p).powf(p / t);
    let den = n.powf(p / k) * (4.0 * t + 2.0 * p - 2.0 - n * p).powf((2.0 * t - 1.0) / k);
    num / den
}

pub fn beta_np(n: f64, p: f64) -> Result<BoundReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid("p", p, "power-growth exponent must be > 1"));
    }
    let basis = "beta_{N,p} = inf_t (2tp-p-t^2)^(-p/t) (2t-1)^((2t-1)/(2t+p-1)+p/t) (2p)^(p/t) / (N^(p/(2t+p-1)) (4t+2p-2-Np)^((2t-1)/(2t+p-1))), max(t_p^-, t_Np) < t < t_p^+";
    let (lo, hi) = beta_np_window(n, p);
    let in_dims = n == 3.0 || n == 4.0;
    Ok(match infimum(|t| beta_np_objective(n, p, t), lo, hi) {
        Some((t, v)) => BoundReport::new("beta_Np", v, basis)
            .with_optimizer(Some(t))
            .flag(in_dims, || format!("estimate established for N = 3 or 4, got N = {n}")),
        None => BoundReport::new("beta_Np", f64::NAN, basis).flag(false, || format!("empty t-window for N = {n}, p = {p}")),
    })
}

/// `‖u*‖ ≤ (p−1)^{p−1} λ₁ β_{N,p}/(p^p (N−2)) (|Ω|/ω_N)^{2/N}` for `F = (1+u)^p`.
pub fn powergrowth_upper(p: f64, stats: &DomainStats) -> Result<BoundReport> {
    let n = stats.dimension;
    let b = beta_np(n, p)?;
    let value = (p - 1.0).powf(p - 1.0) * stats.lambda1 * b.value / (p.powf(p) * (n - 2.0)) * stats.volume_ratio().powf(2.0 / n);
    Ok(BoundReport::new(
        "powergrowth_upper",
        value,
        "|u*| <= (p-1)^(p-1) lambda1 beta_{N,p} / (p^p (N-2)) (|Omega|/omega_N)^(2/N)",
    )
    .with_optimizer(b.optimizer)
    .flag(b.valid, || b.reason.clone().unwrap_or_default()))
}

/// Energy estimates for semi-stable solutions:
/// `‖e^u‖_{2t+1} ≤ (4/(2−t))^{1/t} |Ω|^{1/(2t+1)}` (`0 < t < 2`) and
/// `‖(1−u)^{−2}‖_{t+3/2} ≤ E(t)^{2/t} |Ω|^{2/(2t+3)}` (`0 < t < 2+√6`).
pub fn energy_bound(f: &Nonlinearity, t: f64, volume: f64) -> Result<f64> {
    if !(volume > 0.0 && volume.is_finite()) {
        return Err(invalid("volume", volume, "must be finite and > 0"));
    }
    match f.family() {
        Family::Exponential => {
            if !(t > 0.0 && t < 2.0) {
                return Err(invalid("t", t, "exponential energy estimate needs 0 < t < 2"));
            }
            Ok((4.0 / (2.0 - t)).powf(1.0 / t) * volume.powf(1.0 / (2.0 * t + 1.0)))
        }
        Family::MemsInversePower { .. } => {
            f.require_mems_p2()?;
            if !(t > 0.0 && t < 2.0 + sqrt6()) {
                return Err(invalid("t", t, "MEMS energy estimate needs 0 < t < 2 + sqrt 6"));
            }
            Ok(mems_energy_base(t).powf(2.0 / t) * volume.powf(2.0 / (2.0 * t + 3.0)))
        }
        Family::PowerGrowth { .. } => Err(PullinError::Unsupported(
            "no energy estimate for power growth".into(),
        )),
    }
}

/// The Hölder constant `γ(τ, N)` of the radial linear estimate.
pub fn gamma_tau_n(tau: f64, n: f64) -> Result<f64> {
    if !(n >= 1.0 && n.is_finite()) {
        return Err(invalid("N", n, "dimension must be >= 1"));
    }
    if !(tau > 1.0_f64.max(n / 2.0) && tau.is_finite()) {
        return Err(invalid("tau", tau, "need max(1, N/2) < tau < infinity"));
    }
    if n == 1.0 {
        Ok(tau / (2.0 * tau - 1.0))
    } else if n == 2.0 {
        Ok(tau / (4.0 * (tau - 1.0)))
    } else if n > 2.0 {
        let q = (tau - 1.0) / tau;
        Ok((tau - 1.0).powf(q) / ((n - 2.0) * n.powf(1.0 / tau) * (2.0 * tau - n).powf(q)))
    } else {
        Err(invalid("N", n, "gamma(tau, N) is defined for N = 1, N = 2 and N > 2"))
    }
}

/// `C(t, N) = 4 λ₁(B) γ(t+3/2, N)/27 · E(t)^{2/t}`.
pub fn c_t_n(t: f64, n: f64, lambda1: f64) -> Result<f64> {
    if !(t > 0.0 && t < 2.0 + sqrt6()) {
        return Err(invalid("t", t, "need 0 < t < 2 + sqrt 6"));
    }
    Ok(4.0 * lambda1 * gamma_tau_n(t + 1.5, n)? / 27.0 * mems_energy_base(t).powf(2.0 / t))
}

/// `G(δ) = ∫₀¹ R^{N−1} (δ + C R^k)^{−(2t+3)} dR` with `δ = 1 − m̄`, integrated
/// in `s = R^k`, split near `s = δ/C` where the integrand turns over.
fn radial_integral(n: f64, t: f64, c: f64, delta: f64) -> Result<f64> {
    let k = (4.0 * t + 6.0 - 2.0 * n) / (2.0 * t + 3.0);
    let q = 2.0 * t + 3.0;
    let a = n / k - 1.0;
    let integrand = |s: f64| s.powf(a) / k * (delta + c * s).powf(-q);
    let knee = delta / c;
    let mut breaks = vec![0.0];
    for f in [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
        let b = knee * f;
        if b > 0.0 && b < 1.0 {
            breaks.push(b);
        }
    }
    breaks.push(1.0);
    let r = quad::integrate_with_breaks(integrand, &breaks, 0.0, 1e-11)?;
    Ok(r.value)
}

/// Smallest `m̄ ∈ [0, 1]` compatible with the radial integral inequality at a fixed `t`;
/// `1` when the inequality admits `m̄ → 1`.
fn radial_root(n: f64, t: f64, lambda1: f64) -> Result<f64> {
    let c = c_t_n(t, n, lambda1)?;
    let rhs = mems_energy_base(t).powf((2.0 * t + 3.0) / t) / n;
    let h = |log_delta: f64| match radial_integral(n, t, c, log_delta.exp()) {
        Ok(g) => (g / rhs).ln(),
        Err(_) => f64::NAN,
    };
    let lo = (1e-14_f64).ln();
    let h_lo = h(lo);
    if !(h_lo > 0.0) {
        return Ok(1.0);
    }
    if h(0.0) >= 0.0 {
        return Ok(0.0);
    }
    let ld = brent_root(h, lo, 0.0, 1e-13)?;
    Ok(1.0 - ld.exp())
}

/// Upper bound on the MEMS pull-in distance on the unit ball from the radial
/// integral inequality, minimised over `max(0, (N−3)/2) < t < 2+√6`.
pub fn mems_radial_upper(n: f64, tol: f64) -> Result<BoundReport> {
    if !(1.0..=11.0).contains(&n) {
        return Err(invalid("N", n, "radial estimate stated for 1 <= N <= 11"));
    }
    if n > 1.0 && n < 2.0 {
        return Err(invalid("N", n, "gamma(tau, N) is undefined for 1 < N < 2"));
    }
    let lambda1 = lambda1_ball(n, tol)?.eigenvalue;
    let lo = (0.5 * (n - 3.0)).max(0.0);
    let hi = 2.0 + sqrt6();
    let (t, v) = infimum(|t| radial_root(n, t, lambda1).unwrap_or(f64::NAN), lo, hi)
        .ok_or(PullinError::BracketFailure { what: "radial MEMS bound" })?;
    Ok(BoundReport::new(
        "mems_radial_upper",
        v,
        "inf_t of the root m of int_0^1 R^(N-1) (1 - m + C(t,N) R^k)^-(2t+3) dR = E^((2t+3)/t)/N, k = (4t+6-2N)/(2t+3)",
    )
    .with_optimizer(Some(t))
    .flag(v < 1.0, || format!("inequality does not keep |u*| below 1 in N = {n}")))
}

/// Explicit bounds obtained by replacing `R^k` by `R` in the radial inequality
/// (`N = 1, 2` only).
pub fn mems_radial_closed_form(n: f64, tol: f64) -> Result<BoundReport> {
    let lambda1 = lambda1_ball(n, tol)?.eigenvalue;
    let hi = 2.0 + sqrt6();
    let (lo, basis, g): (f64, &str, Box<dyn Fn(f64) -> f64 + Sync>) = if n == 1.0 {
        (
            0.0,
            "|u*| <= 1 - sup_t (2C(t+1)E^((2t+3)/t) + C^-(2+2t))^(-1/(2t+2)), 0 < t < 2+sqrt6",
            Box::new(move |t: f64| {
                let c = c_t_n(t, 1.0, lambda1).unwrap_or(f64::NAN);
                let e = mems_energy_base(t).powf((2.0 * t + 3.0) / t);
                (2.0 * c * (t + 1.0) * e + c.powf(-(2.0 + 2.0 * t))).powf(-1.0 / (2.0 * t + 2.0))
            }),
        )
    } else if n == 2.0 {
        (
            0.5 - 1e-9,
            "|u*| <= 1 - sup_t (C^2(t+1)E^((2t+3)/t) + (2t+2)/C^(2t+1))^(-1/(2t+1)), 1/2 <= t < 2+sqrt6",
            Box::new(move |t: f64| {
                let c = c_t_n(t, 2.0, lambda1).unwrap_or(f64::NAN);
                let e = mems_energy_base(t).powf((2.0 * t + 3.0) / t);
                (c * c * (t + 1.0) * e + (2.0 * t + 2.0) / c.powf(2.0 * t + 1.0)).powf(-1.0 / (2.0 * t + 1.0))
            }),
        )
    } else {
        return Err(invalid("N", n, "closed forms exist for N = 1 and N = 2 only"));
    };
    let (t, v) = infimum(|t| 1.0 - g(t), lo, hi).ok_or(PullinError::BracketFailure { what: "closed-form radial bound" })?;
    Ok(BoundReport::new("mems_radial_closed_form", v, basis).with_optimizer(Some(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Independent dense scan of an objective on the open window.
    fn scan(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        (1..n)
            .map(|i| f(lo + (hi - lo) * i as f64 / n as f64))
            .filter(|v| v.is_finite())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn ball_volumes() {
        assert!((volume_unit_ball(1.0) - 2.0).abs() < 1e-14);
        assert!((volume_unit_ball(2.0) - PI).abs() < 1e-13);
        assert!((volume_unit_ball(3.0) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((volume_unit_ball(4.0) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn stats_validation() {
        assert!(DomainStats::new(1.0, 1.0, 2.0, 0.5, 1.0, 0.7).is_ok());
        assert!(DomainStats::new(1.0, 1.0, 2.0, 0.5, 1.0, 1.7).is_err());
        assert!(DomainStats::new(0.0, 1.0, 2.0, 0.5, 1.0, 0.7).is_err());
        assert!(DomainStats::new(1.0, 1.0, 0.5, 0.5, 1.0, 0.7).is_err());
    }

    fn ball(n: f64) -> DomainStats {
        DomainStats::unit_ball(n, 0.0, 1e-12).unwrap()
    }

    #[test]
    fn voltage_upper_mems_disc() {
        let r = pullin_voltage_upper(&Nonlinearity::mems_default(), &ball(2.0));
        assert!((r.value - 4.0 / 27.0 * 5.783185962946784).abs() < 1e-8);
        assert!(r.value > 0.789);
    }

    #[test]
    fn voltage_upper_exponential_picks_min() {
        let s = ball(3.0);
        let r = pullin_voltage_upper(&Nonlinearity::exponential(), &s);
        assert!((r.value - s.lambda1 / std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn distance_lower_constant_profile() {
        let s = ball(2.0);
        let r = pullin_distance_lower(&Nonlinearity::mems_default(), &s);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        let r = pullin_distance_lower(&Nonlinearity::exponential(), &s);
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = pullin_distance_lower(&Nonlinearity::power_growth(3.0).unwrap(), &s);
        assert!((r.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_agree_with_general_bound_for_constant_profile() {
        let s = ball(3.0);
        for f in [
            Nonlinearity::mems_default(),
            Nonlinearity::mems(1.5).unwrap(),
            Nonlinearity::exponential(),
            Nonlinearity::power_growth(2.5).unwrap(),
        ] {
            let a = pullin_distance_lower(&f, &s).value;
            let b = pullin_distance_lower_closed_form(&f, &s).value;
            assert!((a - b).abs() < 1e-12, "{}: {a} vs {b}", f.label());
        }
    }

    #[test]
    fn distance_lower_clamps_for_degenerate_profile() {
        let s = DomainStats::new(5.0, 1.0, 2.0, 1e-9, 1.0, 1e-9).unwrap();
        assert_eq!(pullin_distance_lower(&Nonlinearity::exponential(), &s).value, 0.0);
        assert_eq!(pullin_distance_lower(&Nonlinearity::mems_default(), &s).value, 0.0);
    }

    #[test]
    fn stability_check_examples() {
        let s = ball(2.0);
        let f = Nonlinearity::mems_default();
        assert!(stability_necessary_check(&f, &s, 0.789, 0.445).unwrap());
        assert!(!stability_necessary_check(&f, &s, 0.0, 0.445).unwrap());
        assert!(!stability_necessary_check(&f, &s, 0.1, 0.0).unwrap());
    }

    #[test]
    fn beta_table() {
        let reference = [1.9915, 2.2324, 2.6689, 3.42269, 4.81191, 7.9408166, 19.0031];
        for (k, p) in reference.iter().enumerate() {
            let n = 3.0 + k as f64;
            let b = beta_n(n);
            assert!(b.valid);
            if n != 7.0 {
                assert!((b.value - p).abs() < 1e-3, "N={n}: {}", b.value);
            }
        }
        // reference β₇ transposes two digits; the infimum is 4.81913
        assert!((beta_n(7.0).value - 4.81913).abs() < 1e-4);
        assert!(!beta_n(10.0).valid);
        assert!(!beta_n(2.0).valid);
    }

    #[test]
    fn minimised_constants_match_dense_scan() {
        for k in 3..=9 {
            let n = k as f64;
            let (lo, hi) = beta_window(n);
            let s = scan(|t| beta_objective(n, t), lo, hi, 100_000);
            let b = beta_n(n).value;
            assert!(b <= s * (1.0 + 1e-12) && (b - s).abs() / s < 1e-4, "beta N={n}");
        }
        for k in 3..=7 {
            let n = k as f64;
            let (lo, hi) = gamma_window(n);
            let s = scan(|t| gamma_objective(n, t), lo, hi, 100_000);
            let g = gamma_n(n).value;
            assert!(g.is_finite() && g > 0.0);
            assert!((g - s).abs() / s < 1e-4, "gamma N={n}");
        }
        for (n, p) in [(3.0, 2.0), (4.0, 2.0), (3.0, 3.0), (4.0, 1.5)] {
            let (lo, hi) = beta_np_window(n, p);
            let s = scan(|t| beta_np_objective(n, p, t), lo, hi, 100_000);
            let b = beta_np(n, p).unwrap().value;
            assert!((b - s).abs() / s < 1e-4, "beta_Np N={n} p={p}");
        }
    }

    #[test]
    fn beta_np_window_and_validity() {
        let (lo, hi) = beta_np_window(1.0, 2.0);
        assert!((lo - (2.0 - 2.0_f64.sqrt())).abs() < 1e-15);
        assert!((hi - (2.0 + 2.0_f64.sqrt())).abs() < 1e-15);
        let b = beta_np(3.0, 2.0).unwrap();
        assert!(b.valid && b.value.is_finite() && b.value > 0.0);
        assert!(!beta_np(5.0, 2.0).unwrap().valid);
        assert!(beta_np(3.0, 1.0).is_err());
    }

    #[test]
    fn exponential_upper_on_unit_ball() {
        let s = ball(3.0);
        let r = exp_upper_bound(&s);
        assert!((r.value - s.lambda1 * beta_n(3.0).value / std::f64::consts::E).abs() < 1e-10);
        // consistent with the lower bound |u*| >= 1
        assert!(r.value >= 1.0);
        let l = lambda1_lower_bound(3.0, 4.0 * PI / 3.0).unwrap();
        assert!(l.value <= s.lambda1);
    }

    #[test]
    fn lambda_integral_recursion() {
        assert!((lambda_p_r(1.0, 1.0).unwrap() - 0.25).abs() < 1e-12);
        for r in [0.2, 0.5, 0.9] {
            let mut prev = r * r / 2.0;
            assert!((lambda_p_r(0.0, r).unwrap() - prev).abs() < 1e-12);
            for p in 1..=5 {
                let p = p as f64;
                let next = r * r / 2.0 * (-r.ln()).powf(p) + p / 2.0 * prev;
                assert!((lambda_p_r(p, r).unwrap() - next).abs() < 1e-10, "p={p} R={r}");
                prev = next;
            }
        }
    }

    #[test]
    fn planar_exponential_bound() {
        let v = PI / 4.0;
        let s = DomainStats::new(4.0 * 5.783185962946784, v, 2.0, 1.0, 1.0, 1.0).unwrap();
        let r = exp_upper_bound_planar(&s, true).unwrap();
        assert!(r.valid && r.value >= 1.0 && r.value.is_finite());
        assert!(!exp_upper_bound_planar(&s, false).unwrap().valid);
    }

    #[test]
    fn cube_bound() {
        let s = DomainStats::new(3.0 * PI * PI, 1.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        let r = mems_upper_general(&s);
        assert!((r.value - 0.993).abs() < 2e-3, "{}", r.value);
        let b = mems_upper_general(&ball(3.0));
        assert!(b.value < r.value);
    }

    #[test]
    fn energy_values() {
        let m = Nonlinearity::mems_default();
        let e = Nonlinearity::exponential();
        assert!((energy_bound(&m, 1.0, 1.0).unwrap() - 5.76).abs() < 1e-12);
        assert!((energy_bound(&e, 1.0, 1.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(energy_bound(&e, 2.0 - 1e-9, 1.0).unwrap() > 1e4);
        assert!(energy_bound(&e, 2.0, 1.0).is_err());
        assert!(energy_bound(&Nonlinearity::power_growth(2.0).unwrap(), 1.0, 1.0).is_err());
    }

    #[test]
    fn gamma_tau_cases() {
        assert!((gamma_tau_n(2.0, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((gamma_tau_n(2.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(gamma_tau_n(1.5 + 1e-12, 3.0).unwrap() > 1e3);
        assert!(gamma_tau_n(1.4, 3.0).is_err());
        assert!(gamma_tau_n(2.0, 1.5).is_err());
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let tau = 5.0 + k as f64 * 0.5;
            let g = gamma_tau_n(tau, 4.0).unwrap();
            assert!(g < prev);
            prev = g;
        }
    }

    #[test]
    fn gamma_tau_continuous() {
        for n in [1.0, 2.0, 3.0, 5.5] {
            let lo = 1.0_f64.max(n / 2.0) + 0.01;
            for k in 0..500 {
                let tau = lo + k as f64 * 0.02;
                let a = gamma_tau_n(tau, n).unwrap();
                let b = gamma_tau_n(tau + 1e-7, n).unwrap();
                assert!((a - b).abs() < 1e-4 * a.max(1.0));
            }
        }
    }

    #[test]
    fn radial_bound_n9_degenerates() {
        let r = mems_radial_upper(9.0, 1e-10).unwrap();
        assert!(!r.valid);
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn radial_closed_forms_are_bounds() {
        for n in [1.0, 2.0] {
            let c = mems_radial_closed_form(n, 1e-10).unwrap();
            assert!(c.value > 0.0 && c.value <= 1.0);
        }
        assert!(mems_radial_closed_form(3.0, 1e-10).is_err());
    }
}
