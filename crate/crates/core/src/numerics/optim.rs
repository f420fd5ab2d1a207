//! Derivative-free 1-D minimisation and root finding.

use rayon::prelude::*;

use crate::error::{PullinError, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[a, b]`; stops when the
/// bracket is narrower than `xtol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Infimum of `f` over the open interval `(lo, hi)`.
///
/// Endpoints are inset by `1e-9`, a uniform grid of `grid` points picks the
/// best cell (non-finite values are skipped, ties keep the leftmost), and
/// golden-section polishes inside the neighbouring cells to `1e-10`.
pub fn minimize_open_interval<F: Fn(f64) -> f64 + Sync>(f: F, lo: f64, hi: f64, grid: usize) -> Option<(f64, f64)> {
    let a = lo + 1e-9;
    let b = hi - 1e-9;
    if !(b > a) {
        return None;
    }
    let step = (b - a) / (grid - 1) as f64;
    let values: Vec<f64> = (0..grid).into_par_iter().map(|i| f(a + step * i as f64)).collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
            best = Some((i, v));
        }
    }
    let (i, v) = best?;
    let left = a + step * i.saturating_sub(1) as f64;
    let right = (a + step * (i + 1) as f64).min(b);
    let (x, fx) = golden_section(
        |x| {
            let y = f(x);
            if y.is_finite() {
                y
            } else {
                f64::INFINITY
            }
        },
        left,
        right,
        1e-10,
    );
    if fx <= v {
        Some((x, fx))
    } else {
        Some((a + step * i as f64, v))
    }
}

/// Brent's method on a sign-changing bracket `[a, b]`.
pub fn brent_root<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(PullinError::BracketFailure { what: "root" });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Ok(b)
}
