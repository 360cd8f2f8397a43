use halfline_core::kernels::{free_green, heat_kernel, perturbed_green, BoundaryCondition, DeltaConfig};
use halfline_core::oracle::{laplace_green, semigroup_defect};
use proptest::prelude::*;
use BoundaryCondition::*;

fn bc_strategy() -> impl Strategy<Value = BoundaryCondition> {
    prop_oneof![Just(Dirichlet), Just(Neumann)]
}

proptest! {
    #[test]
    fn kernels_are_symmetric(
        bc in bc_strategy(),
        x in 0.0..8.0f64,
        y in 0.0..8.0f64,
        e in -20.0..-0.01f64,
        t in 0.01..5.0f64,
        lambda in 0.1..3.0f64,
        x0 in 0.0..4.0f64,
    ) {
        prop_assert_eq!(free_green(bc, x, y, e).unwrap(), free_green(bc, y, x, e).unwrap());
        prop_assert_eq!(heat_kernel(bc, x, y, t).unwrap(), heat_kernel(bc, y, x, t).unwrap());
        let cfg = DeltaConfig::new(lambda, x0).unwrap();
        if let (Ok(a), Ok(b)) = (perturbed_green(bc, &cfg, x, y, e), perturbed_green(bc, &cfg, y, x, e)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn free_kernels_positive_off_wall(
        bc in bc_strategy(),
        x in 0.01..6.0f64,
        y in 0.01..6.0f64,
        e in -10.0..-0.01f64,
        t in 0.05..5.0f64,
    ) {
        prop_assert!(free_green(bc, x, y, e).unwrap() > 0.0);
        prop_assert!(heat_kernel(bc, x, y, t).unwrap() >= 0.0);
    }

    #[test]
    fn wall_conditions(y in 0.0..6.0f64, e in -10.0..-0.05f64) {
        prop_assert_eq!(free_green(Dirichlet, 0.0, y, e).unwrap(), 0.0);
        // second-order one-sided difference at the wall
        let h = 1e-4;
        let f = |x: f64| free_green(Neumann, x, y, e).unwrap();
        let d = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
        prop_assert!(d.abs() <= 1e-6 * f(0.0), "derivative {} at y = {}", d, y);
    }
}

#[test]
fn perturbed_kernel_solves_the_ode_with_jump() {
    let h = 1e-4;
    for bc in [Dirichlet, Neumann] {
        for &(lambda, x0, e, y) in &[(1.0, 2.0, -1.0, 0.7), (2.5, 0.8, -9.0, 1.9), (0.7, 1.5, -0.3, 3.0)] {
            let cfg = DeltaConfig::new(lambda, x0).unwrap();
            let g = |x: f64| perturbed_green(bc, &cfg, x, y, e).unwrap();
            for &x in &[0.3, 1.1, 2.6, 4.0] {
                if (x - y).abs() < 10.0 * h || (x - x0).abs() < 10.0 * h {
                    continue;
                }
                let second = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
                let lhs = -second + (-e) * g(x);
                assert!(lhs.abs() <= 1e-5 * (1.0 + g(x).abs()), "{bc:?} x={x}: {lhs}");
            }
            // one-sided second-order derivatives on each side of x₀
            let right = (-3.0 * g(x0) + 4.0 * g(x0 + h) - g(x0 + 2.0 * h)) / (2.0 * h);
            let left = (3.0 * g(x0) - 4.0 * g(x0 - h) + g(x0 - 2.0 * h)) / (2.0 * h);
            let expected = -lambda * g(x0);
            assert!(
                ((right - left) - expected).abs() <= 1e-6 * expected.abs(),
                "{bc:?} λ={lambda}: jump {} vs {expected}",
                right - left
            );
        }
    }
}

#[test]
fn laplace_transform_reproduces_resolvent() {
    for bc in [Dirichlet, Neumann] {
        for &x in &[0.0, 0.8, 2.5] {
            for &y in &[0.3, 0.8, 4.0] {
                for &e in &[-0.25, -1.0, -6.0] {
                    let closed = free_green(bc, x, y, e).unwrap();
                    let oracle = laplace_green(bc, x, y, e).unwrap();
                    assert!((closed - oracle).abs() <= 1e-6, "{bc:?} ({x},{y},{e}): {closed} vs {oracle}");
                }
            }
        }
    }
}

#[test]
fn heat_semigroup_property() {
    for bc in [Dirichlet, Neumann] {
        for &(x, y) in &[(0.0, 1.0), (0.5, 0.5), (2.0, 0.1)] {
            for &(t, s) in &[(0.1, 0.3), (1.0, 2.0), (0.05, 4.0)] {
                let d = semigroup_defect(bc, x, y, t, s).unwrap();
                assert!(d <= 1e-8, "{bc:?} x={x} y={y} t={t} s={s}: {d}");
            }
        }
    }
}

#[test]
fn rank_one_part_vanishes_as_x0_goes_to_zero_dirichlet() {
    let e = -1.3;
    let (x, y) = (0.9, 1.7);
    let free = free_green(Dirichlet, x, y, e).unwrap();
    let mut last = f64::INFINITY;
    for &x0 in &[1e-1, 1e-2, 1e-3, 1e-4] {
        let cfg = DeltaConfig::new(2.0, x0).unwrap();
        let diff = (perturbed_green(Dirichlet, &cfg, x, y, e).unwrap() - free).abs();
        assert!(diff < last);
        last = diff;
    }
    assert!(last < 1e-6);
}

#[test]
fn neumann_kernel_converges_to_wall_delta() {
    // x₀ → 0 limit: G + 4λ e^{-κx} e^{-κy} / (4κ² (1 - λ/κ))
    let (lambda, e, x, y) = (0.6, -1.0f64, 0.4, 1.2);
    let kappa = (-e).sqrt();
    let limit = free_green(Neumann, x, y, e).unwrap()
        + 4.0 * lambda * (-kappa * x).exp() / (2.0 * kappa) * (-kappa * y).exp() / (2.0 * kappa) / (1.0 - lambda / kappa);
    let cfg = DeltaConfig::new(lambda, 1e-9).unwrap();
    let g = perturbed_green(Neumann, &cfg, x, y, e).unwrap();
    assert!((g - limit).abs() < 1e-8);
    let at_wall = perturbed_green(Neumann, &DeltaConfig::new(lambda, 0.0).unwrap(), x, y, e).unwrap();
    assert!((at_wall - limit).abs() < 1e-14);
}
