use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pullin::bounds::gamma_tau_n;
use pullin::powerlaw::{asymptotic_envelopes, dim_transform};
use pullin::verification::CRITERIA;
use pullin::{MSchedule, Nonlinearity, ProblemSpec};

use crate::error::CliError;

const DEFAULT_TOL: f64 = 1e-10;
const MAX_TOL: f64 = 1e-3;
const MAX_RANGE_LEN: usize = 1000;
const MAX_M_POINTS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "pullin", version, about = "Pull-in voltage and distance laboratory for -Δu = λ|x|^α F(u) on balls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the solution branch λ(m) and locate the fold
    Branch(BranchArgs),
    /// Analytic bounds on the unit ball
    Bounds(BoundsArgs),
    /// Tables of the optimised constants β_N, γ_N, β_{N,p}, γ(τ,N)
    Constants(ConstantsArgs),
    /// Fractional-dimension transform for f = |x|^α
    Transform(TransformArgs),
    /// Minimal solution between its asymptotic envelopes
    Asymptotics(AsymptoticsArgs),
    /// Run the acceptance criteria
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Exp,
    Mems,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// `--N` value: a real dimension or an inclusive unit-step range `a..b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dims {
    Single(f64),
    Range { from: f64, to: f64 },
}

impl Dims {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Dims::Single(n) => vec![n],
            Dims::Range { from, to } => {
                let count = ((to - from) + 1e-9).floor() as usize + 1;
                (0..count).map(|k| from + k as f64).collect()
            }
        }
    }
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a real number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

pub fn parse_dims(s: &str) -> Result<Dims, String> {
    match s.split_once("..") {
        None => parse_real(s).map(Dims::Single),
        Some((a, b)) => {
            let from = parse_real(a)?;
            let to = parse_real(b)?;
            if to < from {
                return Err(format!("empty range `{s}`"));
            }
            if to - from >= MAX_RANGE_LEN as f64 {
                return Err(format!("range `{s}` has more than {MAX_RANGE_LEN} values"));
            }
            Ok(Dims::Range { from, to })
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (written atomically); standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Exponent of the MEMS (default 2) or power-growth family
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Real dimension N ≥ 1
    #[arg(long = "N", value_parser = parse_real, allow_negative_numbers = true)]
    pub n: f64,
    /// Exponent of the profile f(x) = |x|^α, α > −2
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true, default_value_t = 0.0)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub m_min: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub m_max: Option<f64>,
    #[arg(long)]
    pub m_points: Option<usize>,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Dimension N or inclusive range a..b
    #[arg(long = "N", value_parser = parse_dims, allow_negative_numbers = true)]
    pub n: Dims,
    /// β_N of the exponential estimate
    #[arg(long)]
    pub beta: bool,
    /// γ_N of the MEMS estimate
    #[arg(long)]
    pub gamma: bool,
    /// β_{N,p} of the power-growth estimate (needs --p)
    #[arg(long)]
    pub beta_p: bool,
    /// γ(τ,N) of the radial estimate (needs --tau)
    #[arg(long)]
    pub gamma_tau: bool,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long = "N", value_parser = parse_real, allow_negative_numbers = true)]
    pub n: f64,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true, default_value_t = 0.0)]
    pub alpha: f64,
    /// Classify only this family (default: exp and mems with p = 2)
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long = "N", value_parser = parse_real, allow_negative_numbers = true)]
    pub n: f64,
    /// Parameter 0 < λ < λ*
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, value_parser = parse_real, allow_negative_numbers = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria (repeatable); all when absent
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
    pub criterion: Vec<u8>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Task {
    Branch {
        spec: ProblemSpec,
        schedule: MSchedule,
        tol: f64,
    },
    Bounds {
        spec: ProblemSpec,
        tol: f64,
    },
    Constants {
        dimensions: Vec<f64>,
        beta: bool,
        gamma: bool,
        beta_p: Option<f64>,
        gamma_tau: Option<f64>,
    },
    Transform {
        dimension: f64,
        alpha: f64,
        families: Vec<Nonlinearity>,
    },
    Asymptotics {
        nonlinearity: Nonlinearity,
        dimension: f64,
        lambda: f64,
        tol: f64,
    },
    Verify {
        criteria: Vec<u8>,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Branch { .. } => "branch",
            Task::Bounds { .. } => "bounds",
            Task::Constants { .. } => "constants",
            Task::Transform { .. } => "transform",
            Task::Asymptotics { .. } => "asymptotics",
            Task::Verify { .. } => "verify",
        }
    }
}

/// Parses and validates a full argument vector (program name first).
pub fn parse_run_config<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    RunConfig::try_from(cli)
}

fn nonlinearity(family: FamilyArg, p: Option<f64>) -> Result<Nonlinearity, CliError> {
    match family {
        FamilyArg::Exp => match p {
            Some(_) => Err(CliError::invalid("p", "--p is not used by --family exp")),
            None => Ok(Nonlinearity::exponential()),
        },
        FamilyArg::Mems => Ok(Nonlinearity::mems(p.unwrap_or(2.0))?),
        FamilyArg::Power => match p {
            Some(p) => Ok(Nonlinearity::power_growth(p)?),
            None => Err(CliError::invalid("p", "--family power requires --p")),
        },
    }
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol <= MAX_TOL {
        Ok(tol)
    } else {
        Err(CliError::invalid("tol", format!("--tol = {tol} must lie in (0, {MAX_TOL:e}]")))
    }
}

fn problem(args: &ProblemArgs) -> Result<ProblemSpec, CliError> {
    let f = nonlinearity(args.family, args.p)?;
    Ok(ProblemSpec::new(args.n, f, args.alpha)?)
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let (task, output) = match cli.command {
            Command::Branch(a) => {
                let spec = problem(&a.problem)?;
                let f = spec.nonlinearity;
                let schedule = if a.m_min.is_none() && a.m_max.is_none() && a.m_points.is_none() {
                    MSchedule::Default
                } else {
                    let default_hi = if f.is_singular() { f.domain_end() - 1e-4 } else { 40.0 };
                    MSchedule::LogSpaced {
                        lo: a.m_min.unwrap_or(1e-3),
                        hi: a.m_max.unwrap_or(default_hi),
                        points: a.m_points.unwrap_or(400),
                    }
                };
                if let MSchedule::LogSpaced { points, .. } = schedule {
                    if points > MAX_M_POINTS {
                        return Err(CliError::invalid("m-points", format!("--m-points = {points} exceeds {MAX_M_POINTS}")));
                    }
                }
                schedule.points(&f)?;
                let tol = check_tol(a.tol)?;
                (Task::Branch { spec, schedule, tol }, a.output)
            }
            Command::Bounds(a) => {
                let spec = problem(&a.problem)?;
                let tol = check_tol(a.tol)?;
                (Task::Bounds { spec, tol }, a.output)
            }
            Command::Constants(a) => {
                let dimensions = a.n.values();
                for &n in &dimensions {
                    if n < 1.0 {
                        return Err(CliError::invalid("N", format!("dimension {n} must be >= 1")));
                    }
                }
                if a.p.is_some() && !a.beta_p {
                    return Err(CliError::invalid("p", "--p only applies with --beta-p"));
                }
                if a.tau.is_some() && !a.gamma_tau {
                    return Err(CliError::invalid("tau", "--tau only applies with --gamma-tau"));
                }
                let beta_p = if a.beta_p {
                    let p = a.p.ok_or_else(|| CliError::invalid("p", "--beta-p requires --p"))?;
                    Nonlinearity::power_growth(p)?;
                    Some(p)
                } else {
                    None
                };
                let gamma_tau = if a.gamma_tau {
                    let tau = a.tau.ok_or_else(|| CliError::invalid("tau", "--gamma-tau requires --tau"))?;
                    for &n in &dimensions {
                        gamma_tau_n(tau, n)?;
                    }
                    Some(tau)
                } else {
                    None
                };
                let none = !(a.beta || a.gamma || a.beta_p || a.gamma_tau);
                let task = Task::Constants {
                    dimensions,
                    beta: a.beta || none,
                    gamma: a.gamma || none,
                    beta_p,
                    gamma_tau,
                };
                (task, a.output)
            }
            Command::Transform(a) => {
                dim_transform(a.n, a.alpha)?;
                let families = match a.family {
                    Some(family) => vec![nonlinearity(family, a.p)?],
                    None => {
                        if a.p.is_some() {
                            return Err(CliError::invalid("p", "--p requires --family"));
                        }
                        vec![Nonlinearity::exponential(), Nonlinearity::mems_default()]
                    }
                };
                let task = Task::Transform {
                    dimension: a.n,
                    alpha: a.alpha,
                    families,
                };
                (task, a.output)
            }
            Command::Asymptotics(a) => {
                if a.family == FamilyArg::Power {
                    return Err(CliError::invalid("family", "asymptotic envelopes exist for exp and mems only"));
                }
                let f = nonlinearity(a.family, a.p)?;
                asymptotic_envelopes(&f, a.n, a.lambda)?;
                let tol = check_tol(a.tol)?;
                let task = Task::Asymptotics {
                    nonlinearity: f,
                    dimension: a.n,
                    lambda: a.lambda,
                    tol,
                };
                (task, a.output)
            }
            Command::Verify(a) => {
                let mut criteria = a.criterion.clone();
                if criteria.is_empty() {
                    criteria = CRITERIA.iter().map(|(id, _)| *id).collect();
                }
                criteria.sort_unstable();
                criteria.dedup();
                (Task::Verify { criteria }, a.output)
            }
        };
        Ok(RunConfig {
            task,
            format: output.format,
            out: output.out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<RunConfig, CliError> {
        parse_run_config(std::iter::once("pullin").chain(line.split_whitespace()))
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_dims("3..9").unwrap().values(), vec![3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        assert_eq!(parse_dims("2.5").unwrap().values(), vec![2.5]);
        assert_eq!(parse_dims("1.5..3.5").unwrap().values(), vec![1.5, 2.5, 3.5]);
        assert!(parse_dims("9..3").is_err());
        assert!(parse_dims("3..").is_err());
        assert!(parse_dims("nan").is_err());
        assert!(parse_dims("0..1e9").is_err());
    }

    #[test]
    fn branch_defaults() {
        let c = parse("branch --family mems --N 2").unwrap();
        match c.task {
            Task::Branch { spec, schedule, tol } => {
                assert_eq!(spec.nonlinearity, Nonlinearity::mems_default());
                assert_eq!(schedule, MSchedule::Default);
                assert_eq!(tol, DEFAULT_TOL);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn negative_alpha_is_accepted() {
        let c = parse("transform --N 5 --alpha -1").unwrap();
        assert!(matches!(c.task, Task::Transform { alpha, .. } if alpha == -1.0));
    }

    #[test]
    fn rejections_are_invalid_input() {
        for line in [
            "branch --family mems --N 2 --bogus 1",
            "branch --family exp --N 2 --p 2",
            "branch --family power --N 2",
            "branch --family mems --N 0.5",
            "branch --family mems --N 2 --alpha -3",
            "branch --family mems --N 2 --m-max 1.5",
            "branch --family mems --N 2 --m-points 2",
            "branch --family mems --N 2 --m-points 18446744073709551615",
            "branch --family mems --N 2 --tol 0",
            "branch --family mems --N 2 --tol nan",
            "constants --N 3..9 --p 2",
            "constants --N 3..9 --beta-p",
            "constants --N 3 --gamma-tau --tau 1",
            "transform --N 2 --alpha -2",
            "asymptotics --family power --p 2 --N 10 --lambda 1",
            "asymptotics --family exp --N 10 --lambda 16",
            "asymptotics --family exp --N 3 --lambda 1",
            "verify --criterion 13",
            "bounds --family mems --N 2 --lambda 1",
        ] {
            let e = parse(line).expect_err(line);
            assert_eq!(e.exit_code(), 2, "{line}: {e}");
        }
    }

    #[test]
    fn constants_default_to_beta_and_gamma() {
        let c = parse("constants --N 3..5").unwrap();
        assert!(matches!(c.task, Task::Constants { beta: true, gamma: true, beta_p: None, gamma_tau: None, .. }));
    }
}
