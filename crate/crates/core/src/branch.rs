//! Radial shooting and the solution branch `m ↦ λ(m)`.
//!
//! If `v'' + (N−1)/r v' + F(v) = 0` with `v(0) = m`, `v'(0) = 0` first
//! vanishes at `r = R`, then `u(x) = v(R|x|)` solves the problem on the
//! unit ball with `λ = R²`. The branch is parametrised by the centre value
//! `m`, which indexes radial solutions uniquely, so the fold needs no
//! pseudo-arclength machinery. Power-law profiles `|x|^α` are reduced to
//! the constant profile in dimension `N(α)` first.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, PullinError, Result};
use crate::nonlinearity::Nonlinearity;
use crate::numerics::log_space;
use crate::numerics::ode::{integrate, OdeOptions, Stop};
use crate::numerics::optim::{brent_root, golden_section};
use crate::powerlaw::{dim_transform, TransformResult};
use crate::profile::RadialProfile;
use crate::spectral::{mu1, seed_radius};

/// Dimension `N ≥ 1`, nonlinearity and power-law exponent `α > −2` of
/// `−Δu = λ|x|^α F(u)` on the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemSpec {
    pub dimension: f64,
    pub nonlinearity: Nonlinearity,
    pub alpha: f64,
}

impl ProblemSpec {
    pub fn new(dimension: f64, nonlinearity: Nonlinearity, alpha: f64) -> Result<Self> {
        dim_transform(dimension, alpha)?;
        Ok(Self {
            dimension,
            nonlinearity,
            alpha,
        })
    }

    pub fn constant_profile(dimension: f64, nonlinearity: Nonlinearity) -> Result<Self> {
        Self::new(dimension, nonlinearity, 0.0)
    }

    pub fn transform(&self) -> TransformResult {
        dim_transform(self.dimension, self.alpha).expect("validated on construction")
    }
}

/// Centre values at which the branch is sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MSchedule {
    /// 400 log-spaced points on `(1e-3, a_F − 1e-4)` (singular `F`) or `(1e-3, 40)` (regular `F`).
    Default,
    LogSpaced { lo: f64, hi: f64, points: usize },
    Explicit(Vec<f64>),
}

impl MSchedule {
    pub fn points(&self, f: &Nonlinearity) -> Result<Vec<f64>> {
        let ms = match self {
            MSchedule::Default => {
                let hi = if f.is_singular() { f.domain_end() - 1e-4 } else { 40.0 };
                log_space(1e-3, hi, 400)
            }
            MSchedule::LogSpaced { lo, hi, points } => {
                if *points < 3 {
                    return Err(invalid("m-points", *points as f64, "need at least 3 points"));
                }
                if !(*lo > 0.0 && hi > lo) {
                    return Err(invalid("m-min", *lo, "need 0 < m-min < m-max"));
                }
                log_space(*lo, *hi, *points)
            }
            MSchedule::Explicit(v) => v.clone(),
        };
        if ms.is_empty() {
            return Err(invalid("m-points", 0.0, "empty schedule"));
        }
        for w in ms.windows(2) {
            if !(w[1] > w[0]) {
                return Err(invalid("m", w[1], "schedule must be strictly increasing"));
            }
        }
        for &m in &ms {
            if !(m > 0.0 && m < f.domain_end()) {
                return Err(invalid("m", m, "centre values must lie in (0, a_F)"));
            }
        }
        Ok(ms)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchOptions {
    /// Local shooting tolerance.
    pub tol: f64,
    pub compute_mu1: bool,
}

impl Default for BranchOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            compute_mu1: true,
        }
    }
}

fn ode_options(tol: f64, eps: f64, h_max: f64) -> OdeOptions {
    let rtol = (0.1 * tol).max(1e-14);
    OdeOptions::new(rtol, rtol * 1e-2).with_h_init(0.1 * eps).with_h_max(h_max)
}

/// First zero `R` of `v'' + (N−1)/r v' + r^a F(v) = 0`, `v(0) = m`, with the
/// profile on `[0, R]` when requested.
fn shoot_weighted(
    f: &Nonlinearity,
    n: f64,
    a: f64,
    m: f64,
    tol: f64,
    record: bool,
) -> Result<(f64, Option<RadialProfile>)> {
    if !(n >= 1.0) {
        return Err(invalid("N", n, "dimension must be >= 1"));
    }
    if !(a > -2.0 && n + a > 0.0) {
        return Err(invalid("alpha", a, "need alpha > -2 and N + alpha > 0"));
    }
    let fm = f.eval(m)?;
    if !(m > 0.0) {
        return Err(invalid("m", m, "centre value must be > 0"));
    }
    let k = 2.0 + a;
    let depth = m.min(f.domain_end() - m);
    let eps = seed_radius(n, a, fm, depth, 1e-3);
    let y0 = [m - fm * eps.powf(k) / (k * (n + a)), -fm * eps.powf(1.0 + a) / (n + a)];
    // v ≤ m − r^{2+a}/((2+a)(N+a)) since F ≥ 1
    let r_max = 1.01 * (k * (n + a) * m).powf(1.0 / k) + 1e-9;
    let n1 = n - 1.0;
    let rhs = |r: f64, y: &[f64; 2]| {
        let w = if a == 0.0 { 1.0 } else { r.powf(a) };
        [y[1], -n1 / r * y[1] - w * f.eval_raw(y[0])]
    };
    let opts = ode_options(tol, eps, 0.02 * r_max);
    let tr = integrate(rhs, eps, y0, Stop::FirstZero { component: 0, r_max }, None, record, &opts)?;
    if !tr.hit_zero {
        return Err(PullinError::NoCrossing { r_max });
    }
    let radius = tr.last.r;
    let profile = record.then(|| {
        let mut samples = tr.samples.clone();
        samples.retain(|s| s.r < radius);
        samples.push(tr.last);
        RadialProfile::from_samples(m, &samples)
    });
    Ok((radius, profile))
}

/// A shot of the autonomous radial problem in dimension `N_eff`.
#[derive(Debug, Clone)]
pub struct Shot {
    /// First zero `R` of `v`.
    pub radius: f64,
    /// `v` on `[0, R]`.
    pub profile: RadialProfile,
}

impl Shot {
    /// `λ = R²`.
    pub fn lambda(&self) -> f64 {
        self.radius * self.radius
    }
}

pub fn shoot(f: &Nonlinearity, n_eff: f64, m: f64, tol: f64) -> Result<Shot> {
    let (radius, profile) = shoot_weighted(f, n_eff, 0.0, m, tol, true)?;
    Ok(Shot {
        radius,
        profile: profile.expect("recorded"),
    })
}

fn lambda_eff(f: &Nonlinearity, n_eff: f64, m: f64, tol: f64) -> Result<f64> {
    let (r, _) = shoot_weighted(f, n_eff, 0.0, m, tol, false)?;
    Ok(r * r)
}

/// `λ(m)` for the spec, through the dimension transform.
pub fn lambda_of_m(spec: &ProblemSpec, m: f64, tol: f64) -> Result<f64> {
    let t = spec.transform();
    Ok(t.voltage_factor * lambda_eff(&spec.nonlinearity, t.n_eff, m, tol)?)
}

/// `λ(m)` by shooting the weighted equation `v'' + (N−1)/r v' + r^α F(v) = 0`
/// directly in dimension `N` (`λ = R^{2+α}`), bypassing the transform.
pub fn lambda_weighted_direct(spec: &ProblemSpec, m: f64, tol: f64) -> Result<f64> {
    let (r, _) = shoot_weighted(&spec.nonlinearity, spec.dimension, spec.alpha, m, tol, false)?;
    Ok(r.powf(2.0 + spec.alpha))
}

/// A radial solution on the unit ball, `u(r) = w(r^{1+α/2})` with `w` the
/// solution of the constant-profile problem in dimension `N_eff`.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSolution {
    pub m: f64,
    pub lambda: f64,
    pub n_eff: f64,
    pub alpha: f64,
    /// Sampled radii in `[0, 1]`.
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    #[serde(skip)]
    w: RadialProfile,
    #[serde(skip)]
    exponent: f64,
    #[serde(skip)]
    lambda_eff: f64,
}

impl RadialSolution {
    fn from_shot(spec: &ProblemSpec, m: f64, shot: Shot) -> Self {
        let t = spec.transform();
        let lambda_eff = shot.lambda();
        let w = shot.profile.rescaled(shot.radius);
        let k = t.radius_map_exponent;
        let r = w.radii().iter().map(|s| s.powf(1.0 / k)).collect();
        let u = w.values().to_vec();
        Self {
            m,
            lambda: t.voltage_factor * lambda_eff,
            n_eff: t.n_eff,
            alpha: spec.alpha,
            r,
            u,
            w,
            exponent: k,
            lambda_eff,
        }
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(0.0..=1.0 + 1e-12).contains(&r) {
            return Err(PullinError::OutOfRange { r, lo: 0.0, hi: 1.0 });
        }
        self.w.eval(r.min(1.0).powf(self.exponent))
    }

    pub fn eval_deriv(&self, r: f64) -> Result<f64> {
        if !(0.0..=1.0 + 1e-12).contains(&r) {
            return Err(PullinError::OutOfRange { r, lo: 0.0, hi: 1.0 });
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        let k = self.exponent;
        let r = r.min(1.0);
        Ok(self.w.eval_deriv(r.powf(k))? * k * r.powf(k - 1.0))
    }

    /// The constant-profile solution `w` on `[0, 1]` in dimension `N_eff`.
    pub fn transformed_profile(&self) -> &RadialProfile {
        &self.w
    }

    /// Voltage of the constant-profile problem, `λ/(1+α/2)²`.
    pub fn lambda_transformed(&self) -> f64 {
        self.lambda_eff
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.w.is_strictly_decreasing()
    }
}

pub fn solve_at_m(spec: &ProblemSpec, m: f64, tol: f64) -> Result<RadialSolution> {
    let t = spec.transform();
    let shot = shoot(&spec.nonlinearity, t.n_eff, m, tol)?;
    Ok(RadialSolution::from_shot(spec, m, shot))
}

/// Stability eigenvalue of the constant-profile problem at a solution.
pub fn stability_eigenvalue(spec: &ProblemSpec, sol: &RadialSolution, tol: f64) -> Result<f64> {
    mu1(sol.n_eff, &spec.nonlinearity, sol.lambda_eff, &sol.w, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPoint {
    pub m: f64,
    pub lambda: f64,
    /// `μ₁` of the constant-profile problem (same sign as for the weighted one).
    pub mu1: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    pub spec: ProblemSpec,
    pub points: Vec<BranchPoint>,
    pub lambda_star: f64,
    pub m_star: f64,
    pub fold_found: bool,
    /// `μ₁` at the refined fold.
    pub fold_mu1: Option<f64>,
    pub tol: f64,
}

fn mu1_tol(tol: f64) -> f64 {
    tol.max(1e-12)
}

pub fn solve_branch(spec: &ProblemSpec, schedule: &MSchedule, opts: &BranchOptions) -> Result<Branch> {
    if !(opts.tol > 0.0 && opts.tol < 1e-2) {
        return Err(invalid("tol", opts.tol, "need 0 < tol < 1e-2"));
    }
    let f = spec.nonlinearity;
    let ms = schedule.points(&f)?;
    let t = spec.transform();
    let tol = opts.tol;
    let points: Vec<BranchPoint> = ms
        .par_iter()
        .map(|&m| -> Result<BranchPoint> {
            let (lambda, mu) = if opts.compute_mu1 {
                let sol = solve_at_m(spec, m, tol)?;
                let mu = stability_eigenvalue(spec, &sol, mu1_tol(tol))?;
                (sol.lambda, Some(mu))
            } else {
                (t.voltage_factor * lambda_eff(&f, t.n_eff, m, tol)?, None)
            };
            Ok(BranchPoint { m, lambda, mu1: mu })
        })
        .collect::<Result<Vec<_>>>()?;

    let fold = (1..points.len().saturating_sub(1))
        .find(|&i| points[i].lambda > points[i - 1].lambda && points[i].lambda >= points[i + 1].lambda);

    let (lambda_star, m_star, fold_found, fold_mu1) = match fold {
        Some(i) => {
            let (m_star, lambda_star) = refine_fold(spec, &points[i - 1..=i + 1], tol)?;
            let fold_mu1 = if opts.compute_mu1 {
                let sol = solve_at_m(spec, m_star, tol)?;
                Some(stability_eigenvalue(spec, &sol, mu1_tol(tol))?)
            } else {
                None
            };
            log::info!("fold at m* = {m_star:.9}, lambda* = {lambda_star:.9}");
            (lambda_star, m_star, true, fold_mu1)
        }
        None => {
            let best = points
                .iter()
                .fold(points[0], |b, p| if p.lambda > b.lambda { *p } else { b });
            log::warn!("no fold on the schedule; lambda* = {} is a lower estimate", best.lambda);
            (best.lambda, best.m, false, None)
        }
    };
    Ok(Branch {
        spec: *spec,
        points,
        lambda_star,
        m_star,
        fold_found,
        fold_mu1,
        tol,
    })
}

/// Parabola through the discrete maximum and its neighbours, then a
/// golden-section polish of `λ(m)` on the neighbouring cells.
fn refine_fold(spec: &ProblemSpec, p: &[BranchPoint], tol: f64) -> Result<(f64, f64)> {
    let (x0, x1, x2) = (p[0].m, p[1].m, p[2].m);
    let (y0, y1, y2) = (p[0].lambda, p[1].lambda, p[2].lambda);
    let mut best = (x1, y1);
    let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if denom != 0.0 {
        let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
        let v = x1 - 0.5 * num / denom;
        if v > x0 && v < x2 {
            let lv = lambda_of_m(spec, v, tol)?;
            if lv > best.1 {
                best = (v, lv);
            }
        }
    }
    let neg = |m: f64| -lambda_of_m(spec, m, tol).unwrap_or(f64::NEG_INFINITY);
    let (xg, fg) = golden_section(neg, x0, x2, 1e-9 * x2.max(1.0));
    if -fg > best.1 {
        best = (xg, -fg);
    }
    Ok(best)
}

/// The stable solution at voltage `lambda`: the smallest `m` with `λ(m) = lambda`.
pub fn minimal_solution(spec: &ProblemSpec, lambda: f64, branch: &Branch) -> Result<RadialSolution> {
    if !(lambda > 0.0) {
        return Err(invalid("lambda", lambda, "must be > 0"));
    }
    if lambda >= branch.lambda_star {
        return Err(PullinError::BeyondPullIn {
            lambda,
            lambda_star: branch.lambda_star,
        });
    }
    let tol = branch.tol;
    let stable: Vec<&BranchPoint> = branch.points.iter().filter(|p| p.m <= branch.m_star).collect();
    let mut lo = (0.0, 0.0);
    let mut hi = (branch.m_star, branch.lambda_star);
    for p in &stable {
        if p.lambda >= lambda {
            hi = (p.m, p.lambda);
            break;
        }
        lo = (p.m, p.lambda);
    }
    let m = if hi.1 == lambda {
        hi.0
    } else {
        let g = |m: f64| {
            if m <= 0.0 {
                -lambda
            } else {
                lambda_of_m(spec, m, tol).map(|l| l - lambda).unwrap_or(f64::NAN)
            }
        };
        brent_root(g, lo.0, hi.0, 1e-13 * hi.0.max(1.0))?
    };
    solve_at_m(spec, m, tol)
}

/// `v_λ ≈ (u_{λ+h} − u_{λ−h})/(2h)` on a uniform grid of `[0, 1]`.
pub fn dudlambda(spec: &ProblemSpec, lambda: f64, h: f64, branch: &Branch) -> Result<RadialProfile> {
    if !(h > 0.0 && lambda - h > 0.0) {
        return Err(invalid("h", h, "need 0 < h < lambda"));
    }
    if lambda + h >= branch.lambda_star {
        return Err(PullinError::BeyondPullIn {
            lambda: lambda + h,
            lambda_star: branch.lambda_star,
        });
    }
    let up = minimal_solution(spec, lambda + h, branch)?;
    let down = minimal_solution(spec, lambda - h, branch)?;
    let n = 401;
    let mut r = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    let mut dv = Vec::with_capacity(n);
    for i in 0..n {
        let x = i as f64 / (n - 1) as f64;
        r.push(x);
        v.push((up.eval(x)? - down.eval(x)?) / (2.0 * h));
        dv.push((up.eval_deriv(x)? - down.eval_deriv(x)?) / (2.0 * h));
    }
    Ok(RadialProfile::new(r, v, dv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{pullin_distance_lower, pullin_voltage_upper, DomainStats};

    /// `N = 1`: `v = m − 2 ln cosh(r e^{m/2}/√2)`, so `λ(m) = 2 e^{−m} acosh²(e^{m/2})`.
    fn exp_interval_lambda(m: f64) -> f64 {
        2.0 * (-m).exp() * (m / 2.0).exp().acosh().powi(2)
    }

    /// `N = 2`: `v = m − 2 ln(1 + e^m r²/8)`, so `λ(m) = 8 (e^{m/2} − 1) e^{−m}`.
    fn exp_disc_lambda(m: f64) -> f64 {
        8.0 * ((m / 2.0).exp() - 1.0) * (-m).exp()
    }

    #[test]
    fn shooting_matches_liouville_solutions() {
        let f = Nonlinearity::exponential();
        for m in [1e-3, 0.1, 1.0, 3.0, 10.0, 25.0] {
            let l1 = lambda_eff(&f, 1.0, m, 1e-10).unwrap();
            assert!((l1 / exp_interval_lambda(m) - 1.0).abs() < 1e-8, "N=1 m={m}");
            let l2 = lambda_eff(&f, 2.0, m, 1e-10).unwrap();
            assert!((l2 / exp_disc_lambda(m) - 1.0).abs() < 1e-8, "N=2 m={m}");
        }
    }

    #[test]
    fn small_centre_value_gives_small_voltage() {
        let f = Nonlinearity::mems_default();
        let l = lambda_eff(&f, 3.0, 1e-6, 1e-10).unwrap();
        // linearisation: λ ≈ 2N m for tiny m
        assert!((l / (6.0 * 1e-6) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn shot_profile_is_monotone_and_vanishes_at_radius() {
        let s = shoot(&Nonlinearity::mems_default(), 2.0, 0.4, 1e-10).unwrap();
        assert!(s.profile.is_strictly_decreasing());
        assert!(s.profile.eval(s.radius).unwrap().abs() < 1e-9);
        assert_eq!(s.profile.eval(0.0).unwrap(), 0.4);
    }

    #[test]
    fn halving_tolerance_is_converged() {
        let f = Nonlinearity::mems_default();
        for m in [0.01, 0.3, 0.6, 0.99] {
            let a = lambda_eff(&f, 3.0, m, 1e-9).unwrap();
            let b = lambda_eff(&f, 3.0, m, 5e-10).unwrap();
            assert!((a - b).abs() < 10.0 * 1e-9, "m={m}");
        }
    }

    #[test]
    fn exponential_disc_branch_fold() {
        let spec = ProblemSpec::constant_profile(2.0, Nonlinearity::exponential()).unwrap();
        let b = solve_branch(
            &spec,
            &MSchedule::LogSpaced { lo: 1e-3, hi: 10.0, points: 120 },
            &BranchOptions::default(),
        )
        .unwrap();
        assert!(b.fold_found);
        assert!((b.lambda_star - 2.0).abs() < 1e-9);
        assert!((b.m_star - 2.0 * 2.0_f64.ln()).abs() < 1e-4);
        assert!(b.fold_mu1.unwrap().abs() < 1e-4);
    }

    #[test]
    fn mems_disc_fold_and_bounds() {
        let f = Nonlinearity::mems_default();
        let spec = ProblemSpec::constant_profile(2.0, f).unwrap();
        let b = solve_branch(&spec, &MSchedule::Default, &BranchOptions::default()).unwrap();
        assert!(b.fold_found);
        assert!((b.lambda_star - 0.789).abs() < 5e-3);
        assert!((b.m_star - 0.445).abs() < 5e-3);
        let stats = DomainStats::unit_ball(2.0, 0.0, 1e-12).unwrap();
        assert!(b.lambda_star <= pullin_voltage_upper(&f, &stats).value);
        assert!(b.m_star >= pullin_distance_lower(&f, &stats).value);
        for p in b.points.iter().filter(|p| p.m < b.m_star) {
            assert!(p.mu1.unwrap() > 0.0, "m={}", p.m);
        }
        assert!(b.points.iter().any(|p| p.m > b.m_star && p.mu1.unwrap() < 0.0));
    }

    #[test]
    fn minimal_solution_below_fold() {
        let f = Nonlinearity::mems_default();
        let spec = ProblemSpec::constant_profile(2.0, f).unwrap();
        let b = solve_branch(&spec, &MSchedule::Default, &BranchOptions::default()).unwrap();
        let s = minimal_solution(&spec, 0.5, &b).unwrap();
        assert!(s.m < 0.445);
        assert!((s.lambda - 0.5).abs() < 1e-9);
        assert!(stability_eigenvalue(&spec, &s, 1e-10).unwrap() > 0.0);
        assert!(s.eval(1.0).unwrap().abs() < 1e-9);
        assert!(s.is_strictly_decreasing());
        let tiny = minimal_solution(&spec, 1e-6, &b).unwrap();
        assert!(tiny.u.iter().all(|&u| u < 1e-6));
        assert!(matches!(
            minimal_solution(&spec, 0.8, &b),
            Err(PullinError::BeyondPullIn { .. })
        ));
        let lo = minimal_solution(&spec, 0.3, &b).unwrap();
        for i in 0..=100 {
            let r = i as f64 / 100.0;
            assert!(lo.eval(r).unwrap() <= s.eval(r).unwrap() + 1e-12);
        }
    }

    #[test]
    fn dudlambda_positive_and_increasing() {
        let spec = ProblemSpec::constant_profile(2.0, Nonlinearity::mems_default()).unwrap();
        let b = solve_branch(&spec, &MSchedule::Default, &BranchOptions { tol: 1e-11, compute_mu1: false }).unwrap();
        let v1 = dudlambda(&spec, 0.4, 1e-4, &b).unwrap();
        let v2 = dudlambda(&spec, 0.6, 1e-4, &b).unwrap();
        assert!(v1.eval(1.0).unwrap().abs() < 1e-6);
        for i in 0..400 {
            let r = i as f64 / 400.0;
            assert!(v1.eval(r).unwrap() > 0.0);
            assert!(v2.eval(r).unwrap() >= v1.eval(r).unwrap());
        }
        assert!(dudlambda(&spec, 0.785, 0.01, &b).is_err());
    }

    #[test]
    fn weighted_direct_agrees_with_transform() {
        for (n, a) in [(3.0, 1.0), (2.0, 3.0), (5.0, -1.0)] {
            let spec = ProblemSpec::new(n, Nonlinearity::mems_default(), a).unwrap();
            for m in [0.05, 0.3, 0.6] {
                let d = lambda_weighted_direct(&spec, m, 1e-11).unwrap();
                let t = lambda_of_m(&spec, m, 1e-11).unwrap();
                assert!((d / t - 1.0).abs() < 1e-7, "N={n} a={a} m={m}");
            }
        }
    }

    #[test]
    fn transformed_solution_maps_radius() {
        let spec = ProblemSpec::new(3.0, Nonlinearity::mems_default(), 2.0).unwrap();
        let s = solve_at_m(&spec, 0.3, 1e-10).unwrap();
        assert_eq!(s.n_eff, 2.5);
        assert!((s.eval(0.0).unwrap() - 0.3).abs() < 1e-15);
        assert!(s.eval(1.0).unwrap().abs() < 1e-9);
        let w = s.transformed_profile();
        assert!((s.eval(0.5).unwrap() - w.eval(0.25).unwrap()).abs() < 1e-14);
        // residual of u'' + (N−1)/r u' + λ r^α F(u) by differences
        let h = 1e-4;
        for r in [0.2, 0.5, 0.8] {
            let d2 = (s.eval_deriv(r + h).unwrap() - s.eval_deriv(r - h).unwrap()) / (2.0 * h);
            let res = d2 + 2.0 / r * s.eval_deriv(r).unwrap() + s.lambda * r * r * (1.0 - s.eval(r).unwrap()).powi(-2);
            assert!(res.abs() < 1e-4, "r={r}: {res}");
        }
    }

    #[test]
    fn schedule_validation() {
        let f = Nonlinearity::mems_default();
        assert!(MSchedule::Explicit(vec![0.1, 0.1]).points(&f).is_err());
        assert!(MSchedule::Explicit(vec![0.1, 1.0]).points(&f).is_err());
        assert!(MSchedule::LogSpaced { lo: 0.0, hi: 0.5, points: 10 }.points(&f).is_err());
        let d = MSchedule::Default.points(&f).unwrap();
        assert_eq!(d.len(), 400);
        assert!((d[399] - (1.0 - 1e-4)).abs() < 1e-15);
        let d = MSchedule::Default.points(&Nonlinearity::exponential()).unwrap();
        assert_eq!(d[399], 40.0);
    }
}
