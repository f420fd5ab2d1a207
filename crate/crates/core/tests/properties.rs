use proptest::prelude::*;

use pullin::bounds::{gamma_tau_n, DomainStats};
use pullin::branch::{lambda_of_m, solve_at_m, ProblemSpec};
use pullin::spectral::{lambda1_ball, profile_weight_ratio};
use pullin::Nonlinearity;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radial_solutions_are_admissible(m in 0.01f64..0.99, n in 1.0f64..9.0, alpha in -0.5f64..3.0) {
        let spec = ProblemSpec::new(n, Nonlinearity::mems_default(), alpha).unwrap();
        let s = solve_at_m(&spec, m, 1e-10).unwrap();
        prop_assert!(s.lambda > 0.0);
        prop_assert!((s.eval(0.0).unwrap() - m).abs() < 1e-15);
        prop_assert!(s.eval(1.0).unwrap().abs() < 1e-9);
        prop_assert!(s.is_strictly_decreasing());
        prop_assert!(s.u.iter().all(|&u| (-1e-12..1.0).contains(&u)));
    }

    #[test]
    fn exponential_solutions_are_admissible(m in 0.01f64..30.0, n in 1.0f64..12.0) {
        let spec = ProblemSpec::constant_profile(n, Nonlinearity::exponential()).unwrap();
        let s = solve_at_m(&spec, m, 1e-10).unwrap();
        prop_assert!(s.is_strictly_decreasing());
        prop_assert!(s.eval(1.0).unwrap().abs() < 1e-9 * m.max(1.0));
    }

    #[test]
    fn shooting_is_mesh_converged(m in 0.01f64..0.999, n in 1.0f64..8.0) {
        let spec = ProblemSpec::constant_profile(n, Nonlinearity::mems_default()).unwrap();
        let tol = 1e-9;
        let a = lambda_of_m(&spec, m, tol).unwrap();
        let b = lambda_of_m(&spec, m, tol / 2.0).unwrap();
        prop_assert!((a - b).abs() < 10.0 * tol);
    }

    #[test]
    fn unit_ball_profile_mean_lies_between_extremes(n in 1.0f64..8.0, alpha in -0.9f64..6.0) {
        let s = DomainStats::unit_ball(n, alpha, 1e-10).unwrap();
        prop_assert!(s.inf_f <= s.f_phi_integral && s.f_phi_integral <= s.sup_f);
    }

    #[test]
    fn weight_ratio_decreases_in_alpha(n in 1.0f64..6.0, a in 0.0f64..5.0, da in 0.1f64..3.0) {
        let lo = profile_weight_ratio(n, a, 1e-10).unwrap();
        let hi = profile_weight_ratio(n, a + da, 1e-10).unwrap();
        prop_assert!(hi < lo);
    }

    #[test]
    fn gamma_tau_is_continuous(n in 3.0f64..10.0, s in 0.05f64..20.0) {
        let tau = n / 2.0 + s;
        let a = gamma_tau_n(tau, n).unwrap();
        let b = gamma_tau_n(tau + 1e-8, n).unwrap();
        prop_assert!((a - b).abs() <= 1e-5 * a);
    }
}

#[test]
fn first_eigenvalue_increases_with_dimension() {
    let mut prev = 0.0;
    for k in 0..=22 {
        let l = lambda1_ball(1.0 + 0.5 * k as f64, 1e-10).unwrap().eigenvalue;
        assert!(l > prev);
        prev = l;
    }
}
