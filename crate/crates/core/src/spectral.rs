//! Radial Sturm–Liouville problems on the unit ball in real dimension `N`:
//! the principal Dirichlet eigenpair, weighted eigenfunction integrals, and
//! the stability eigenvalue of the linearised operator `−Δ − λ F′(u)`.
//!
//! Every eigenvalue is localised by zero counting: a shot `ψ` with no zero
//! in `(0, 1]` means the trial value lies below the principal eigenvalue.
//! Once a bracket separates "no zero" from "exactly one zero", Brent's method
//! on `ψ(1)` finishes the job.

use serde::Serialize;

use crate::bounds::volume_unit_ball;
use crate::error::{invalid, PullinError, Result};
use crate::nonlinearity::Nonlinearity;
use crate::numerics::ode::{integrate, integrate_until, OdeOptions, Stop};
use crate::numerics::optim::brent_root;
use crate::profile::RadialProfile;

/// Start radius for a series seed `y(0) − y(r) ≈ c r^{2+α}/((2+α)(N+α))`,
/// chosen so the dropped higher-order terms are far below `depth·1e-8`.
pub(crate) fn seed_radius(n: f64, alpha: f64, c: f64, depth: f64, cap: f64) -> f64 {
    let k = 2.0 + alpha;
    if c.abs() < 1e-300 {
        return cap.min(1e-6);
    }
    let eps = (1e-8 * depth * k * (n + alpha) / c.abs()).powf(1.0 / k);
    eps.min(cap)
}

/// Principal eigenpair of the radial Dirichlet Laplacian.
#[derive(Debug, Clone, Serialize)]
pub struct EigenPair {
    pub dimension: f64,
    pub eigenvalue: f64,
    /// Eigenfunction normalised by `ψ(0) = 1`.
    pub psi: RadialProfile,
    /// Factor `c` such that `φ = c ψ` has `∫_B φ = 1`.
    pub phi_normalization: f64,
}

fn ode_tol(tol: f64) -> (f64, f64) {
    let rtol = (tol * 1e-2).clamp(1e-13, 1e-8);
    (rtol, rtol * 1e-3)
}

/// Shooting problem `ψ'' + (N−1)/r ψ' + (q(r) + μ) ψ = 0`, `ψ(0)=1`, `ψ'(0)=0` on `[0,1]`.
///
/// The potential `q` must be non-increasing. Once `q(r) + μ < 0` with `ψ ≠ 0`
/// and `ψψ' ≥ 0`, `|r^{N−1}ψ'|` keeps growing and `ψ` has no further zero,
/// so the shot stops there; this keeps very negative trial values from
/// overflowing.
struct SturmShooter<Q: Fn(f64) -> f64> {
    n: f64,
    potential: Q,
    rtol: f64,
    atol: f64,
}

impl<Q: Fn(f64) -> f64> SturmShooter<Q> {
    fn seed(&self, mu: f64) -> (f64, [f64; 2]) {
        let c = self.potential(0.0) + mu;
        let eps = seed_radius(self.n, 0.0, c, 1.0, 1e-4);
        (eps, [1.0 - c * eps * eps / (2.0 * self.n), -c * eps / self.n])
    }

    fn potential(&self, r: f64) -> f64 {
        (self.potential)(r)
    }

    fn rhs(&self, mu: f64) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] + '_ {
        let n1 = self.n - 1.0;
        move |r, y| [y[1], -n1 / r * y[1] - (self.potential(r) + mu) * y[0]]
    }

    fn opts(&self, eps: f64) -> OdeOptions {
        OdeOptions::new(self.rtol, self.atol).with_h_init(eps * 0.1).with_h_max(0.05)
    }

    fn escaped(&self, mu: f64) -> impl Fn(f64, &[f64; 2]) -> bool + '_ {
        move |r, y| y[0] != 0.0 && y[0] * y[1] >= 0.0 && self.potential(r) + mu < 0.0
    }

    /// True when `ψ` vanishes somewhere in `(0, 1]`.
    fn has_zero(&self, mu: f64) -> Result<bool> {
        let (eps, y0) = self.seed(mu);
        let tr = integrate_until(
            self.rhs(mu),
            eps,
            y0,
            Stop::FirstZero { component: 0, r_max: 1.0 },
            None,
            false,
            &self.opts(eps),
            self.escaped(mu),
        )?;
        Ok(!tr.escaped && (tr.hit_zero || tr.last.y[0] <= 0.0))
    }

    /// `(ψ(1), number of interior sign changes)`, or `None` when the shot
    /// escaped before reaching `r = 1`.
    fn endpoint(&self, mu: f64) -> Result<Option<(f64, usize)>> {
        let (eps, y0) = self.seed(mu);
        let tr = integrate_until(
            self.rhs(mu),
            eps,
            y0,
            Stop::At(1.0),
            Some(0),
            false,
            &self.opts(eps),
            self.escaped(mu),
        )?;
        Ok((!tr.escaped).then_some((tr.last.y[0], tr.sign_changes)))
    }

    fn profile(&self, mu: f64) -> Result<RadialProfile> {
        let (eps, y0) = self.seed(mu);
        let tr = integrate(self.rhs(mu), eps, y0, Stop::At(1.0), None, true, &self.opts(eps))?;
        Ok(RadialProfile::from_samples(1.0, &tr.samples))
    }

    /// Principal eigenvalue, starting from the bracket guess `[lo, hi]`.
    fn principal(&self, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
        let mut widen = (hi - lo).abs().max(1.0);
        let mut tries = 0;
        while self.has_zero(lo)? {
            lo -= widen;
            widen *= 2.0;
            tries += 1;
            if tries > 60 {
                return Err(PullinError::BracketFailure { what: "principal eigenvalue (lower)" });
            }
        }
        widen = (hi - lo).abs().max(1.0);
        tries = 0;
        while !self.has_zero(hi)? {
            hi += widen;
            widen *= 2.0;
            tries += 1;
            if tries > 60 {
                return Err(PullinError::BracketFailure { what: "principal eigenvalue (upper)" });
            }
        }
        for _ in 0..400 {
            if let (Some((f_lo, n_lo)), Some((f_hi, n_hi))) = (self.endpoint(lo)?, self.endpoint(hi)?) {
                if n_lo == 0 && f_lo > 0.0 && n_hi == 1 && f_hi < 0.0 {
                    let xtol = tol.max(1e-15 * hi.abs().max(1.0));
                    let g = |mu| match self.endpoint(mu) {
                        Ok(Some((v, _))) => v,
                        _ => f64::NAN,
                    };
                    if let Ok(root) = brent_root(g, lo, hi, xtol) {
                        return Ok(root);
                    }
                }
            }
            let mid = 0.5 * (lo + hi);
            if self.has_zero(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs())) {
                return Ok(0.5 * (lo + hi));
            }
        }
        Err(PullinError::BracketFailure { what: "principal eigenvalue" })
    }
}

fn check_dimension(n: f64) -> Result<()> {
    if !(n.is_finite() && n >= 1.0) {
        return Err(invalid("N", n, "dimension must be >= 1"));
    }
    Ok(())
}

/// Principal Dirichlet eigenvalue of `−Δ` on the unit ball of dimension `N`.
pub fn lambda1_ball(n: f64, tol: f64) -> Result<EigenPair> {
    check_dimension(n)?;
    let (rtol, atol) = ode_tol(tol);
    let sh = SturmShooter {
        n,
        potential: |_r: f64| 0.0,
        rtol,
        atol,
    };
    let eigenvalue = sh.principal(1.0, 4.0 * n * n, tol)?;
    let psi = sh.profile(eigenvalue)?;
    let radial = weighted_moments(n, eigenvalue, &[0.0], rtol)?[0];
    let phi_normalization = 1.0 / (n * volume_unit_ball(n) * radial);
    Ok(EigenPair {
        dimension: n,
        eigenvalue,
        psi,
        phi_normalization,
    })
}

/// `∫₀¹ r^{N−1+α} ψ(r) dr` for each α, integrated alongside the eigenfunction.
fn weighted_moments(n: f64, eigenvalue: f64, alphas: &[f64], rtol: f64) -> Result<Vec<f64>> {
    const MAX_W: usize = 4;
    assert!(alphas.len() <= MAX_W);
    let eps = seed_radius(n, 0.0, eigenvalue, 1.0, 1e-4);
    let mut y0 = [0.0; 2 + MAX_W];
    y0[0] = 1.0 - eigenvalue * eps * eps / (2.0 * n);
    y0[1] = -eigenvalue * eps / n;
    for (k, a) in alphas.iter().enumerate() {
        // ψ ≈ 1 on [0, ε]
        y0[2 + k] = eps.powf(n + a) / (n + a);
    }
    let n1 = n - 1.0;
    let mut powers = [0.0; MAX_W];
    for (k, a) in alphas.iter().enumerate() {
        powers[k] = n1 + a;
    }
    let m = alphas.len();
    let rhs = move |r: f64, y: &[f64; 2 + MAX_W]| {
        let mut d = [0.0; 2 + MAX_W];
        d[0] = y[1];
        d[1] = -n1 / r * y[1] - eigenvalue * y[0];
        for k in 0..m {
            d[2 + k] = r.powf(powers[k]) * y[0];
        }
        d
    };
    let opts = OdeOptions::new(rtol, rtol * 1e-3)
        .with_h_init(eps * 0.1)
        .with_h_max(0.02);
    let tr = integrate(rhs, eps, y0, Stop::At(1.0), None, false, &opts)?;
    Ok((0..m).map(|k| tr.last.y[2 + k]).collect())
}

/// `∫_B |x|^α φ_B dx` with `∫_B φ_B = 1`, i.e. the ratio
/// `∫₀¹ r^{N−1+α} ψ dr / ∫₀¹ r^{N−1} ψ dr`.
pub fn profile_weight_ratio(n: f64, alpha: f64, tol: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(alpha > -2.0) || !(n + alpha > 0.0) {
        return Err(invalid("alpha", alpha, "need alpha > -2 and N + alpha > 0"));
    }
    let pair = lambda1_ball(n, tol)?;
    let (rtol, _) = ode_tol(tol);
    let m = weighted_moments(n, pair.eigenvalue, &[alpha, 0.0], rtol)?;
    let ratio = m[0] / m[1];
    if !ratio.is_finite() {
        return Err(PullinError::Quadrature { error: f64::NAN });
    }
    Ok(ratio)
}

/// Principal eigenvalue `μ₁` of `−ψ'' − (N−1)/r ψ' − λ F′(u(r)) ψ = μ ψ` on the
/// unit ball, with `u` given as an interpolated radial profile on `[0, 1]`.
pub fn mu1(n: f64, f: &Nonlinearity, lambda: f64, u: &RadialProfile, tol: f64) -> Result<f64> {
    check_dimension(n)?;
    let hi = u.r_max();
    if (hi - 1.0).abs() > 1e-9 {
        return Err(PullinError::OutOfRange { r: 1.0, lo: 0.0, hi });
    }
    let centre = u.eval(0.0)?;
    f.eval_deriv(centre)?;
    let (rtol, atol) = ode_tol(tol);
    let sh = SturmShooter {
        n,
        potential: |r: f64| lambda * f.deriv_raw(u.eval_clamped(r)),
        rtol,
        atol,
    };
    let q0 = lambda * f.deriv_raw(centre);
    // μ₁ ∈ [λ₁ − λ F′(u(0)), λ₁ − λ F′(0)]; the lower end widens geometrically as needed
    let lambda1_guess = lambda1_guess(n);
    sh.principal(lambda1_guess - 1.0 - q0.min(100.0), lambda1_guess + 1.0, tol)
}

/// Cheap bracket centre for `λ₁(B)`: `j²` with `j` the first zero of the Bessel
/// function of order `N/2 − 1`, approximated by its linear fit.
fn lambda1_guess(n: f64) -> f64 {
    let j = 2.4 + 0.75 * (n - 2.0) + 0.05 * (n - 2.0).abs();
    (j * j).max(1.0)
}
