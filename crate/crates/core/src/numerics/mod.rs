//! Small numerical kernels shared by the solvers: an embedded Runge–Kutta
//! integrator with zero-crossing events, adaptive Gauss–Kronrod quadrature,
//! and derivative-free 1-D minimisation / root bracketing.

pub mod ode;
pub mod optim;
pub mod quad;

/// `n` points spaced logarithmically on `[lo, hi]`, endpoints included.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` points spaced linearly on `[lo, hi]`, endpoints included.
pub fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}
