//! The twelve reproducibility checks, each returning a pass/fail record
//! with the computed numbers. Tolerances are fixed here.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{
    beta_n, beta_np, beta_np_objective, beta_np_window, beta_objective, beta_window, gamma_n, gamma_objective,
    gamma_window, mems_radial_upper, mems_upper_general, DomainStats,
};
use crate::branch::{
    lambda_of_m, lambda_weighted_direct, minimal_solution, solve_branch, Branch, BranchOptions, MSchedule, ProblemSpec,
};
use crate::error::Result;
use crate::nonlinearity::{Family, Nonlinearity};
use crate::numerics::{log_space, quad};
use crate::powerlaw::{alpha_critical_mems, asymptotic_envelopes, singular_extremal};
use crate::spectral::lambda1_ball;

pub const REFERENCE_BETA: [f64; 7] = [1.9915, 2.2324, 2.6689, 3.42269, 4.81191, 7.9408166, 19.0031];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "beta table"),
    (2, "MEMS disc pull-in"),
    (3, "alpha invariance in N = 2"),
    (4, "singular accumulation"),
    (5, "cube bound"),
    (6, "radial MEMS upper bounds"),
    (7, "bound sandwich"),
    (8, "stability fold"),
    (9, "asymptotic envelopes"),
    (10, "exact-solution residuals"),
    (11, "oracle equivalence"),
    (12, "transform round-trip"),
];

const TOL: f64 = 1e-10;

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id)).collect()
}

/// Run one criterion; computational errors are reported as failures.
pub fn run_criterion(id: u8) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion")
        .to_string();
    let outcome = match id {
        1 => c1_beta_table(),
        2 => c2_mems_disc(),
        3 => c3_alpha_invariance(),
        4 => c4_singular_accumulation(),
        5 => c5_cube_bound(),
        6 => c6_radial_upper(),
        7 => c7_bound_sandwich(),
        8 => c8_stability_fold(),
        9 => c9_envelopes(),
        10 => c10_residuals(),
        11 => c11_oracles(),
        12 => c12_round_trip(),
        _ => Ok((false, format!("no criterion with id {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    log::info!("criterion {id} ({name}): {}", if passed { "PASS" } else { "FAIL" });
    CriterionResult { id, name, passed, detail }
}

type Outcome = Result<(bool, String)>;

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn c1_beta_table() -> Outcome {
    let (rows, dt) = timed(|| (3..=9).map(|n| beta_n(n as f64)).collect::<Vec<_>>());
    let mut ok = dt < Duration::from_secs(1);
    let mut parts = Vec::new();
    for (k, (b, p)) in rows.iter().zip(REFERENCE_BETA).enumerate() {
        let good = (b.value - p).abs() <= 1e-3;
        ok &= good;
        parts.push(format!("beta_{}={:.6}{}", k + 3, b.value, if good { "" } else { " (off)" }));
    }
    if dt >= Duration::from_secs(1) {
        parts.push("runtime above 1 s".into());
    }
    Ok((ok, parts.join(", ")))
}

fn mems_branch(n: f64, alpha: f64, compute_mu1: bool) -> Result<Branch> {
    let spec = ProblemSpec::new(n, Nonlinearity::mems_default(), alpha)?;
    solve_branch(&spec, &MSchedule::Default, &BranchOptions { tol: TOL, compute_mu1 })
}

fn c2_mems_disc() -> Outcome {
    let (b, dt) = timed(|| mems_branch(2.0, 0.0, false));
    let b = b?;
    let ok = b.fold_found
        && (b.lambda_star - 0.789).abs() <= 5e-3
        && (b.m_star - 0.445).abs() <= 5e-3
        && dt < Duration::from_secs(10);
    Ok((
        ok,
        format!(
            "lambda*={:.6}, m*={:.6}, fold_found={}{}",
            b.lambda_star,
            b.m_star,
            b.fold_found,
            if dt < Duration::from_secs(10) { "" } else { ", runtime above 10 s" }
        ),
    ))
}

fn c3_alpha_invariance() -> Outcome {
    let base = mems_branch(2.0, 0.0, false)?;
    let mut ok = base.fold_found;
    let mut parts = vec![format!("alpha=0: lambda*={:.6}, m*={:.6}", base.lambda_star, base.m_star)];
    for alpha in [1.0, 3.0] {
        let b = mems_branch(2.0, alpha, false)?;
        let k = 1.0 + alpha / 2.0;
        let dl = (b.lambda_star / (k * k) - base.lambda_star).abs();
        let dm = (b.m_star - base.m_star).abs();
        ok &= b.fold_found && dl <= 1e-3 && dm <= 1e-3;
        parts.push(format!("alpha={alpha}: |dlambda|={dl:.2e}, |dm|={dm:.2e}"));
    }
    Ok((ok, parts.join("; ")))
}

fn c4_singular_accumulation() -> Outcome {
    let mems = ProblemSpec::constant_profile(8.0, Nonlinearity::mems_default())?;
    let l_mems = lambda_of_m(&mems, 1.0 - 1e-3, TOL)?;
    let exp = ProblemSpec::constant_profile(10.0, Nonlinearity::exponential())?;
    let l_exp = lambda_of_m(&exp, 20.0, TOL)?;
    let r_mems = (l_mems / (40.0 / 9.0) - 1.0).abs();
    let r_exp = (l_exp / 16.0 - 1.0).abs();
    Ok((
        r_mems <= 0.01 && r_exp <= 0.01,
        format!("MEMS N=8: lambda={l_mems:.6} (rel {r_mems:.2e}); exp N=10: lambda={l_exp:.6} (rel {r_exp:.2e})"),
    ))
}

fn c5_cube_bound() -> Outcome {
    let stats = DomainStats::new(3.0 * PI * PI, 1.0, 3.0, 1.0, 1.0, 1.0)?;
    let r = mems_upper_general(&stats);
    Ok((
        r.valid && (r.value - 0.993).abs() <= 2e-3,
        format!("bound={:.6}, gamma_3={:.6}", r.value, gamma_n(3.0).value),
    ))
}

fn c6_radial_upper() -> Outcome {
    let b1 = mems_radial_upper(1.0, 1e-12)?;
    let b2 = mems_radial_upper(2.0, 1e-12)?;
    let ok1 = (b1.value - 0.49).abs() <= 0.01;
    let ok2 = (b2.value - 0.55).abs() <= 0.01;
    Ok((
        ok1 && ok2,
        format!(
            "N=1: {:.6} at t={:.4} (target 0.49); N=2: {:.6} at t={:.4} (target 0.55)",
            b1.value,
            b1.optimizer.unwrap_or(f64::NAN),
            b2.value,
            b2.optimizer.unwrap_or(f64::NAN)
        ),
    ))
}

fn c7_bound_sandwich() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 1..=7 {
        let n = k as f64;
        let b = mems_branch(n, 0.0, false)?;
        let l1 = lambda1_ball(n, 1e-12)?.eigenvalue;
        let upper = 4.0 * l1 / 27.0;
        let good = b.fold_found && b.m_star >= 1.0 / 3.0 - 1e-3 && b.lambda_star <= upper + 1e-6;
        ok &= good;
        parts.push(format!(
            "N={k}: m*={:.5}, lambda*={:.5} <= {:.5}{}",
            b.m_star,
            b.lambda_star,
            upper,
            if good { "" } else { " (violated)" }
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Branches with a classical extremal: MEMS `N = 1..7` and exponential `N = 1..9`.
fn c8_stability_fold() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let cases = (1..=7)
        .map(|n| (Nonlinearity::mems_default(), n))
        .chain((1..=9).map(|n| (Nonlinearity::exponential(), n)));
    for (f, n) in cases {
        let spec = ProblemSpec::constant_profile(n as f64, f)?;
        let b = solve_branch(&spec, &MSchedule::Default, &BranchOptions { tol: TOL, compute_mu1: true })?;
        let below_ok = b
            .points
            .iter()
            .filter(|p| p.m < b.m_star)
            .all(|p| p.mu1.is_some_and(|m| m > 0.0));
        let fold_mu = b.fold_mu1.unwrap_or(f64::NAN);
        let fold_ok = b.fold_found && fold_mu.abs() < 1e-2 * b.lambda_star;
        ok &= below_ok && fold_ok;
        if !(below_ok && fold_ok) {
            parts.push(format!(
                "{} N={n}: fold_found={}, mu1(fold)={fold_mu:.3e}, stable side positive={below_ok}",
                f.label(),
                b.fold_found
            ));
        } else {
            parts.push(format!("{} N={n}: mu1(fold)={fold_mu:.1e}", f.label()));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn c9_envelopes() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, n) in [(Nonlinearity::exponential(), 10.0), (Nonlinearity::mems_default(), 9.0)] {
        // exponential N = 10 is the critical dimension: tolerance loosened tenfold
        let slack = if matches!(f.family(), Family::Exponential) { 1e-2 } else { 1e-3 };
        let spec = ProblemSpec::constant_profile(n, f)?;
        let b = solve_branch(&spec, &MSchedule::Default, &BranchOptions { tol: TOL, compute_mu1: false })?;
        let ls = singular_extremal(&f, n, 0.0)?.lambda_star;
        for frac in [0.5, 0.9] {
            let lambda = frac * ls;
            let env = asymptotic_envelopes(&f, n, lambda)?;
            let sol = minimal_solution(&spec, lambda, &b)?;
            let mut worst = f64::NEG_INFINITY;
            for r in log_space(0.01, 1.0, 100) {
                let u = sol.eval(r)?;
                worst = worst.max(env.lower(r) - u).max(u - env.upper(r));
            }
            let good = worst <= slack;
            ok &= good;
            parts.push(format!("{} N={n} lambda={frac}lambda*: max violation {worst:.2e}", f.label()));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn c10_residuals() -> Outcome {
    let mems = Nonlinearity::mems_default();
    let exp = Nonlinearity::exponential();
    let cases = [
        (mems, 8.0, 0.0),
        (mems, 8.0, alpha_critical_mems(8.0) / 2.0),
        (exp, 10.0, 0.0),
        (exp, 12.0, 0.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, n, a) in cases {
        let s = singular_extremal(&f, n, a)?;
        let worst = (0..=2000)
            .map(|i| 0.05 + (0.999 - 0.05) * i as f64 / 2000.0)
            .map(|r| s.residual(r).abs())
            .fold(0.0, f64::max);
        ok &= worst < 1e-8;
        parts.push(format!("{} N={n} alpha={a:.5}: {worst:.1e}", f.label()));
    }
    Ok((ok, parts.join("; ")))
}

/// `sup τ/F(τ)` by a dense grid with successive local refinement.
pub fn bf_oracle(f: &Nonlinearity) -> f64 {
    let g = |t: f64| t / f.eval_raw(t);
    let (mut lo, mut hi) = (0.0, f.domain_end().min(200.0));
    let mut best = (0.0, 0.0);
    for _ in 0..8 {
        let n = 10_000;
        for i in 1..n {
            let t = lo + (hi - lo) * i as f64 / n as f64;
            let v = g(t);
            if v > best.1 {
                best = (t, v);
            }
        }
        let h = (hi - lo) / n as f64;
        lo = (best.0 - 2.0 * h).max(0.0);
        hi = best.0 + 2.0 * h;
    }
    best.1
}

/// `∫₀^{a_F} dτ/F(τ)` by quadrature, split at 50 with an analytic tail for regular `F`.
pub fn cf_oracle(f: &Nonlinearity) -> Result<f64> {
    let g = |t: f64| 1.0 / f.eval_raw(t);
    Ok(match f.family() {
        Family::MemsInversePower { .. } => quad::integrate(g, 0.0, 1.0, 0.0, 1e-12)?.value,
        Family::Exponential => quad::integrate(g, 0.0, 50.0, 0.0, 1e-12)?.value + (-50.0_f64).exp(),
        Family::PowerGrowth { p } => quad::integrate(g, 0.0, 50.0, 0.0, 1e-12)?.value + 51.0_f64.powf(1.0 - p) / (p - 1.0),
    })
}

fn scan_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = 100_000;
    (1..n)
        .map(|i| f(lo + (hi - lo) * i as f64 / n as f64))
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min)
}

fn c11_oracles() -> Outcome {
    let mut ok = true;
    let mut worst_bc: f64 = 0.0;
    let families = [
        Nonlinearity::exponential(),
        Nonlinearity::mems(0.5)?,
        Nonlinearity::mems_default(),
        Nonlinearity::mems(3.0)?,
        Nonlinearity::power_growth(1.5)?,
        Nonlinearity::power_growth(2.0)?,
        Nonlinearity::power_growth(4.0)?,
    ];
    for f in families {
        let (b, c) = f.bf_cf();
        let rb = (b / bf_oracle(&f) - 1.0).abs();
        let rc = (c / cf_oracle(&f)? - 1.0).abs();
        worst_bc = worst_bc.max(rb).max(rc);
        ok &= rb <= 1e-6 && rc <= 1e-6;
    }
    let mut worst_const: f64 = 0.0;
    let mut check = |v: f64, s: f64| {
        let r = (v - s).abs() / s;
        worst_const = worst_const.max(r);
        r <= 1e-4
    };
    for k in 3..=9 {
        let n = k as f64;
        let (lo, hi) = beta_window(n);
        ok &= check(beta_n(n).value, scan_min(|t| beta_objective(n, t), lo, hi));
    }
    for k in 3..=7 {
        let n = k as f64;
        let (lo, hi) = gamma_window(n);
        ok &= check(gamma_n(n).value, scan_min(|t| gamma_objective(n, t), lo, hi));
    }
    for (n, p) in [(3.0, 2.0), (4.0, 2.0), (3.0, 3.0)] {
        let (lo, hi) = beta_np_window(n, p);
        ok &= check(beta_np(n, p)?.value, scan_min(|t| beta_np_objective(n, p, t), lo, hi));
    }
    Ok((
        ok,
        format!("B_F/C_F worst relative gap {worst_bc:.1e}; constants worst relative gap {worst_const:.1e}"),
    ))
}

fn c12_round_trip() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (n, a) in [(3.0, 1.0), (2.0, 3.0), (5.0, -1.0)] {
        for (f, hi) in [(Nonlinearity::mems_default(), 0.95), (Nonlinearity::exponential(), 5.0)] {
            let spec = ProblemSpec::new(n, f, a)?;
            for m in log_space(0.01, hi, 10) {
                let d = lambda_weighted_direct(&spec, m, 1e-11)?;
                let t = lambda_of_m(&spec, m, 1e-11)?;
                let r = (d / t - 1.0).abs();
                worst = worst.max(r);
                ok &= r <= 1e-6;
            }
        }
    }
    Ok((ok, format!("worst relative gap {worst:.2e}")))
}
