//! Dormand–Prince 5(4) stepping with embedded error control.
//!
//! Supports fixed-size state arrays, a
//! terminal zero-crossing event on one component, optional sign-change
//! counting on another, and optional recording of every accepted step
//! (value and derivative) for later Hermite interpolation.

use crate::error::{PullinError, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            h_init: 1e-6,
            h_max: f64::INFINITY,
            max_steps: 200_000,
        }
    }

    pub fn with_h_init(mut self, h: f64) -> Self {
        self.h_init = h;
        self
    }

    pub fn with_h_max(mut self, h: f64) -> Self {
        self.h_max = h;
        self
    }
}

/// One accepted point of a trajectory: position, state and state derivative.
#[derive(Debug, Clone, Copy)]
pub struct Sample<const D: usize> {
    pub r: f64,
    pub y: [f64; D],
    pub dy: [f64; D],
}

#[derive(Debug, Clone, Copy)]
pub enum Stop {
    /// Integrate up to and including `r`.
    At(f64),
    /// Stop at the first sign change of `component`; give up at `r_max`.
    FirstZero { component: usize, r_max: f64 },
}

#[derive(Debug, Clone)]
pub struct Trajectory<const D: usize> {
    /// Accepted steps (only populated when recording was requested).
    pub samples: Vec<Sample<D>>,
    /// Final state: the located zero for `Stop::FirstZero`, otherwise the end point.
    pub last: Sample<D>,
    /// Whether a terminal zero was located.
    pub hit_zero: bool,
    /// Sign changes of the counted component over the integration range.
    pub sign_changes: usize,
    /// Whether the escape predicate stopped the integration early.
    pub escaped: bool,
}

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// b - b_hat
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[inline]
fn combo<const D: usize>(y: &[f64; D], h: f64, ks: &[[f64; D]], w: &[f64]) -> [f64; D] {
    let mut out = *y;
    for (k, &wi) in ks.iter().zip(w) {
        if wi != 0.0 {
            for i in 0..D {
                out[i] += h * wi * k[i];
            }
        }
    }
    out
}

/// A single Dormand–Prince step. Returns the new state, its derivative
/// (first-same-as-last) and the embedded error estimate.
fn dp_step<const D: usize, F>(
    rhs: &F,
    r: f64,
    y: &[f64; D],
    k1: &[f64; D],
    h: f64,
) -> ([f64; D], [f64; D], [f64; D])
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    let mut ks = [[0.0; D]; 7];
    ks[0] = *k1;
    ks[1] = rhs(r + C[0] * h, &combo(y, h, &ks[..1], &A2));
    ks[2] = rhs(r + C[1] * h, &combo(y, h, &ks[..2], &A3));
    ks[3] = rhs(r + C[2] * h, &combo(y, h, &ks[..3], &A4));
    ks[4] = rhs(r + C[3] * h, &combo(y, h, &ks[..4], &A5));
    ks[5] = rhs(r + C[4] * h, &combo(y, h, &ks[..5], &A6));
    let y_new = combo(y, h, &ks[..6], &B);
    ks[6] = rhs(r + h, &y_new);
    let mut err = [0.0; D];
    for (k, &e) in ks.iter().zip(E.iter()) {
        for i in 0..D {
            err[i] += h * e * k[i];
        }
    }
    (y_new, ks[6], err)
}

fn error_norm<const D: usize>(err: &[f64; D], y0: &[f64; D], y1: &[f64; D], o: &OdeOptions) -> f64 {
    let mut acc = 0.0;
    for i in 0..D {
        let sc = o.atol + o.rtol * y0[i].abs().max(y1[i].abs());
        acc += (err[i] / sc).powi(2);
    }
    (acc / D as f64).sqrt()
}

fn all_finite<const D: usize>(y: &[f64; D]) -> bool {
    y.iter().all(|v| v.is_finite())
}

/// Cubic Hermite root of component `c` on the step `[a, b]`, refined by
/// Newton iterations that re-take a single step from `a`.
fn locate_zero<const D: usize, F>(rhs: &F, a: &Sample<D>, b: &Sample<D>, c: usize) -> Sample<D>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    let h = b.r - a.r;
    let (p0, p1, m0, m1) = (a.y[c], b.y[c], a.dy[c] * h, b.dy[c] * h);
    let herm = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * p0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * p1
            + (s3 - s2) * m1
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let sign_lo = p0.signum();
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if herm(mid).signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut s = a.r + 0.5 * (lo + hi) * h;
    let mut best = *b;
    for _ in 0..4 {
        let step = s - a.r;
        if step <= 0.0 {
            break;
        }
        let (y, dy, _) = dp_step(rhs, a.r, &a.y, &a.dy, step);
        best = Sample { r: s, y, dy };
        if dy[c] == 0.0 || !all_finite(&y) {
            break;
        }
        let ds = y[c] / dy[c];
        let s_new = (s - ds).clamp(a.r, b.r);
        if (s_new - s).abs() <= 4.0 * f64::EPSILON * s.abs().max(1e-300) {
            s = s_new;
            break;
        }
        s = s_new;
    }
    if s != best.r && s > a.r {
        let (y, dy, _) = dp_step(rhs, a.r, &a.y, &a.dy, s - a.r);
        best = Sample { r: s, y, dy };
    }
    best
}

/// Integrate `y' = rhs(r, y)` from `(r0, y0)`.
pub fn integrate<const D: usize, F>(
    rhs: F,
    r0: f64,
    y0: [f64; D],
    stop: Stop,
    count_component: Option<usize>,
    record: bool,
    opts: &OdeOptions,
) -> Result<Trajectory<D>>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    integrate_until(rhs, r0, y0, stop, count_component, record, opts, |_, _| false)
}

/// As [`integrate`], stopping after the first accepted step at which
/// `escape(r, y)` holds.
#[allow(clippy::too_many_arguments)]
pub fn integrate_until<const D: usize, F, G>(
    rhs: F,
    r0: f64,
    y0: [f64; D],
    stop: Stop,
    count_component: Option<usize>,
    record: bool,
    opts: &OdeOptions,
    escape: G,
) -> Result<Trajectory<D>>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
    G: Fn(f64, &[f64; D]) -> bool,
{
    let r_end = match stop {
        Stop::At(r) => r,
        Stop::FirstZero { r_max, .. } => r_max,
    };
    let mut cur = Sample {
        r: r0,
        y: y0,
        dy: rhs(r0, &y0),
    };
    if !all_finite(&cur.y) || !all_finite(&cur.dy) {
        return Err(PullinError::IntegratorFault {
            r: r0,
            reason: "non-finite initial state".into(),
        });
    }
    let mut samples = Vec::new();
    if record {
        samples.push(cur);
    }
    let mut h = opts.h_init.min(opts.h_max).min(r_end - r0);
    let mut sign_changes = 0usize;
    let mut steps = 0usize;
    while cur.r < r_end {
        steps += 1;
        if steps > opts.max_steps {
            return Err(PullinError::IntegratorFault {
                r: cur.r,
                reason: "step budget exhausted".into(),
            });
        }
        let last = cur.r + h >= r_end;
        if last {
            h = r_end - cur.r;
        }
        let (y_new, dy_new, err) = dp_step(&rhs, cur.r, &cur.y, &cur.dy, h);
        let en = if all_finite(&y_new) && all_finite(&dy_new) {
            error_norm(&err, &cur.y, &y_new, opts)
        } else {
            f64::INFINITY
        };
        if en > 1.0 {
            h *= if en.is_finite() {
                (0.9 * en.powf(-0.2)).max(0.2)
            } else {
                0.25
            };
            if h <= 1e-15 * cur.r.abs().max(1e-300) {
                return Err(PullinError::IntegratorFault {
                    r: cur.r,
                    reason: "step size underflow".into(),
                });
            }
            continue;
        }
        let next = Sample {
            r: if last { r_end } else { cur.r + h },
            y: y_new,
            dy: dy_new,
        };
        if let Stop::FirstZero { component, .. } = stop {
            if cur.y[component] != 0.0 && next.y[component].signum() != cur.y[component].signum() {
                let z = locate_zero(&rhs, &cur, &next, component);
                if record {
                    samples.push(z);
                }
                return Ok(Trajectory {
                    samples,
                    last: z,
                    hit_zero: true,
                    sign_changes: sign_changes + 1,
                    escaped: false,
                });
            }
        }
        if let Some(c) = count_component {
            if cur.y[c] != 0.0 && next.y[c] != 0.0 && next.y[c].signum() != cur.y[c].signum() {
                sign_changes += 1;
            }
        }
        cur = next;
        if record {
            samples.push(cur);
        }
        if escape(cur.r, &cur.y) {
            return Ok(Trajectory {
                samples,
                last: cur,
                hit_zero: false,
                sign_changes,
                escaped: true,
            });
        }
        let fac = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * fac).min(opts.h_max);
    }
    Ok(Trajectory {
        samples,
        last: cur,
        hit_zero: false,
        sign_changes,
        escaped: false,
    })
}
