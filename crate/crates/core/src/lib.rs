//! Numerical laboratory for the nonlinear eigenvalue problem
//! `−Δu = λ f(x) F(u)` on balls of real dimension `N`.
//!
//! * [`nonlinearity`]: the families `e^u`, `(1−u)^{−p}`, `(1+u)^p`.
//! * [`branch`]: radial shooting, the branch `λ(m)`, pull-in voltage and distance.
//! * [`spectral`]: `λ₁(B)`, eigenfunction moments, stability eigenvalue `μ₁`.
//! * [`bounds`]: analytic upper and lower estimates and their constants.
//! * [`powerlaw`]: the fractional-dimension transform for `f = |x|^α`,
//!   explicit singular extremals and asymptotic envelopes.
//! * [`verification`]: the reproducible acceptance checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod branch;
pub mod error;
pub mod nonlinearity;
pub mod numerics;
pub mod powerlaw;
pub mod profile;
pub mod spectral;
pub mod verification;

pub use branch::{Branch, BranchOptions, BranchPoint, MSchedule, ProblemSpec, RadialSolution};
pub use error::{PullinError, Result};
pub use nonlinearity::{Family, Nonlinearity};
pub use profile::RadialProfile;
