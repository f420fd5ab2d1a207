use serde::Serialize;

use pullin::bounds::{
    beta_n, beta_np, exp_upper_bound, exp_upper_bound_planar, gamma_n, gamma_tau_n, lambda1_lower_bound,
    mems_radial_closed_form, mems_radial_upper, mems_upper_general, powergrowth_upper, pullin_distance_lower,
    pullin_distance_lower_closed_form, pullin_voltage_upper, BoundReport, DomainStats,
};
use pullin::branch::{minimal_solution, solve_branch};
use pullin::numerics::log_space;
use pullin::powerlaw::{asymptotic_envelopes, classify_regularity, dim_transform, Regularity};
use pullin::verification::run_criterion;
use pullin::{BranchOptions, Family, MSchedule, Nonlinearity, ProblemSpec, PullinError};

use crate::error::CliError;

pub struct Outcome<T> {
    pub result: T,
    pub warnings: Vec<String>,
}

fn compute<T>(r: pullin::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Compute)
}

#[derive(Debug, Serialize)]
pub struct PointRow {
    pub m: f64,
    pub lambda: f64,
    pub mu1: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct BranchResult {
    pub points: Vec<PointRow>,
    pub lambda_star: f64,
    pub m_star: f64,
    pub fold_found: bool,
}

pub fn branch(spec: &ProblemSpec, schedule: &MSchedule, tol: f64) -> Result<Outcome<BranchResult>, CliError> {
    let b = compute(solve_branch(spec, schedule, &BranchOptions { tol, compute_mu1: true }))?;
    let mut warnings = Vec::new();
    if !b.fold_found {
        warnings.push("no interior fold on the schedule; lambda_star is the sampled maximum".into());
    }
    if spec.alpha != 0.0 {
        warnings.push("mu1 is the stability eigenvalue of the transformed constant-profile problem".into());
    }
    let points = b
        .points
        .iter()
        .map(|p| PointRow {
            m: p.m,
            lambda: p.lambda,
            mu1: p.mu1,
        })
        .collect();
    Ok(Outcome {
        result: BranchResult {
            points,
            lambda_star: b.lambda_star,
            m_star: b.m_star,
            fold_found: b.fold_found,
        },
        warnings,
    })
}

pub fn bounds(spec: &ProblemSpec, tol: f64) -> Result<Outcome<Vec<BoundReport>>, CliError> {
    let n = spec.dimension;
    let f = spec.nonlinearity;
    let stats = compute(DomainStats::unit_ball(n, spec.alpha, tol))?;
    let mut warnings = Vec::new();
    let mut reports = vec![
        pullin_voltage_upper(&f, &stats),
        pullin_distance_lower(&f, &stats),
        pullin_distance_lower_closed_form(&f, &stats),
    ];
    let mut optional = |r: pullin::Result<BoundReport>| match r {
        Ok(b) => reports.push(b),
        Err(e) => warnings.push(e.to_string()),
    };
    optional(lambda1_lower_bound(n, stats.volume));
    match f.family() {
        Family::Exponential => {
            optional(Ok(exp_upper_bound(&stats)));
            if n == 2.0 {
                optional(exp_upper_bound_planar(&stats, false));
            }
        }
        Family::MemsInversePower { p: 2.0 } => {
            optional(Ok(mems_upper_general(&stats)));
            if spec.alpha == 0.0 {
                optional(mems_radial_upper(n, tol));
                if n == 1.0 || n == 2.0 {
                    optional(mems_radial_closed_form(n, tol));
                }
            }
        }
        Family::MemsInversePower { .. } => {
            warnings.push("MEMS-specific estimates need p = 2".into());
        }
        Family::PowerGrowth { p } => optional(powergrowth_upper(p, &stats)),
    }
    for r in &reports {
        if !r.valid {
            warnings.push(format!("{}: {}", r.name, r.reason.clone().unwrap_or_default()));
        }
    }
    Ok(Outcome {
        result: reports,
        warnings,
    })
}

#[derive(Debug, Serialize)]
pub struct ConstantRow {
    pub constant: &'static str,
    #[serde(rename = "N")]
    pub n: f64,
    pub p: Option<f64>,
    pub tau: Option<f64>,
    pub value: f64,
    pub optimizer: Option<f64>,
    pub valid: bool,
    pub reason: Option<String>,
}

impl ConstantRow {
    fn from_report(constant: &'static str, n: f64, p: Option<f64>, r: BoundReport) -> Self {
        Self {
            constant,
            n,
            p,
            tau: None,
            value: r.value,
            optimizer: r.optimizer,
            valid: r.valid,
            reason: r.reason,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstantsResult {
    pub rows: Vec<ConstantRow>,
}

pub fn constants(
    dims: &[f64],
    beta: bool,
    gamma: bool,
    beta_p: Option<f64>,
    gamma_tau: Option<f64>,
) -> Result<Outcome<ConstantsResult>, CliError> {
    let mut rows = Vec::new();
    if beta {
        rows.extend(dims.iter().map(|&n| ConstantRow::from_report("beta_N", n, None, beta_n(n))));
    }
    if gamma {
        rows.extend(dims.iter().map(|&n| ConstantRow::from_report("gamma_N", n, None, gamma_n(n))));
    }
    if let Some(p) = beta_p {
        for &n in dims {
            rows.push(ConstantRow::from_report("beta_Np", n, Some(p), compute(beta_np(n, p))?));
        }
    }
    if let Some(tau) = gamma_tau {
        for &n in dims {
            rows.push(ConstantRow {
                constant: "gamma_tau_N",
                n,
                p: None,
                tau: Some(tau),
                value: compute(gamma_tau_n(tau, n))?,
                optimizer: None,
                valid: true,
                reason: None,
            });
        }
    }
    let warnings = rows
        .iter()
        .filter(|r| !r.valid)
        .map(|r| format!("{} at N = {}: {}", r.constant, r.n, r.reason.clone().unwrap_or_default()))
        .collect();
    Ok(Outcome {
        result: ConstantsResult { rows },
        warnings,
    })
}

#[derive(Debug, Serialize)]
pub struct Classification {
    pub family: String,
    pub regularity: Option<Regularity>,
}

#[derive(Debug, Serialize)]
pub struct TransformOutput {
    #[serde(rename = "N")]
    pub n: f64,
    pub alpha: f64,
    #[serde(rename = "N_eff")]
    pub n_eff: f64,
    pub voltage_factor: f64,
    pub radius_map_exponent: f64,
    pub classification: Vec<Classification>,
}

pub fn transform(n: f64, alpha: f64, families: &[Nonlinearity]) -> Result<Outcome<TransformOutput>, CliError> {
    let t = compute(dim_transform(n, alpha))?;
    let mut warnings = Vec::new();
    let classification = families
        .iter()
        .map(|f| {
            let regularity = match classify_regularity(f, n, alpha) {
                Ok(r) => Some(r),
                Err(e) => {
                    warnings.push(format!("{}: {e}", f.label()));
                    None
                }
            };
            Classification {
                family: f.label(),
                regularity,
            }
        })
        .collect();
    Ok(Outcome {
        result: TransformOutput {
            n,
            alpha,
            n_eff: t.n_eff,
            voltage_factor: t.voltage_factor,
            radius_map_exponent: t.radius_map_exponent,
            classification,
        },
        warnings,
    })
}

#[derive(Debug, Serialize)]
pub struct EnvelopeSample {
    pub r: f64,
    pub lower: f64,
    pub u: f64,
    pub upper: f64,
}

#[derive(Debug, Serialize)]
pub struct AsymptoticsResult {
    pub lambda: f64,
    pub lambda_star: f64,
    pub samples: Vec<EnvelopeSample>,
}

pub fn asymptotics(f: &Nonlinearity, n: f64, lambda: f64, tol: f64) -> Result<Outcome<AsymptoticsResult>, CliError> {
    let env = compute(asymptotic_envelopes(f, n, lambda))?;
    let spec = compute(ProblemSpec::constant_profile(n, *f))?;
    let b = compute(solve_branch(
        &spec,
        &MSchedule::Default,
        &BranchOptions {
            tol,
            compute_mu1: false,
        },
    ))?;
    let sol = compute(minimal_solution(&spec, lambda, &b))?;
    let mut warnings = Vec::new();
    let samples = log_space(0.01, 1.0, 100)
        .into_iter()
        .map(|r| {
            Ok(EnvelopeSample {
                r,
                lower: env.lower(r),
                u: sol.eval(r)?,
                upper: env.upper(r),
            })
        })
        .collect::<Result<Vec<_>, PullinError>>()
        .map_err(CliError::Compute)?;
    let outside = samples
        .iter()
        .filter(|s| s.u < s.lower - 1e-3 || s.u > s.upper + 1e-3)
        .count();
    if outside > 0 {
        warnings.push(format!("{outside} sample(s) leave the envelopes by more than 1e-3"));
    }
    Ok(Outcome {
        result: AsymptoticsResult {
            lambda,
            lambda_star: env.extremal.lambda_star,
            samples,
        },
        warnings,
    })
}

#[derive(Debug, Serialize)]
pub struct CriterionRow {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyResult {
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<CriterionRow>,
}

pub fn verify(ids: &[u8]) -> Outcome<VerifyResult> {
    let criteria: Vec<CriterionRow> = ids
        .iter()
        .map(|&id| {
            let c = run_criterion(id);
            CriterionRow {
                id: c.id,
                name: c.name,
                passed: c.passed,
                detail: c.detail,
            }
        })
        .collect();
    let passed = criteria.iter().filter(|c| c.passed).count();
    let warnings = criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("criterion {} ({}) failed", c.id, c.name))
        .collect();
    Outcome {
        result: VerifyResult {
            passed,
            failed: criteria.len() - passed,
            criteria,
        },
        warnings,
    }
}
