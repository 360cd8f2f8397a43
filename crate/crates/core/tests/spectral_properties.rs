use halfline_core::kernels::{BoundaryCondition, DeltaConfig};
use halfline_core::oracle::{integrate_pieces, shooting_eigenvalue, ShootingConfig};
use halfline_core::spectral::{bound_state_energy, x0_of_energy};
use proptest::prelude::*;
use BoundaryCondition::*;

fn energy(bc: BoundaryCondition, lambda: f64, x0: f64) -> Option<f64> {
    bound_state_energy(bc, &DeltaConfig::new(lambda, x0).unwrap()).map(|s| s.energy())
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn monotone_in_x0() {
    for &lambda in &[0.5, 1.0, 2.0, 4.0] {
        let grid = linspace(1.0 / lambda * 1.0001, 12.0 / lambda, 400);
        let d: Vec<f64> = grid.iter().map(|&x| energy(Dirichlet, lambda, x).unwrap()).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "Dirichlet λ={lambda}");
        let grid = linspace(0.0, 12.0 / lambda, 400);
        let n: Vec<f64> = grid.iter().map(|&x| energy(Neumann, lambda, x).unwrap()).collect();
        assert!(n.windows(2).all(|w| w[1] > w[0]), "Neumann λ={lambda}");
    }
}

#[test]
fn neumann_binds_deeper() {
    for &lambda in &linspace(0.3, 5.0, 15) {
        for &x0 in &linspace(0.1, 6.0, 15) {
            if let Some(d) = energy(Dirichlet, lambda, x0) {
                assert!(energy(Neumann, lambda, x0).unwrap() < d);
            }
        }
    }
}

#[test]
fn coupling_limits() {
    // weak coupling: Neumann energy vanishes, Dirichlet state disappears
    let e = energy(Neumann, 1e-4, 1.0).unwrap();
    assert!(e < 0.0 && e > -1e-7);
    assert!(energy(Dirichlet, 0.999, 1.0).is_none());
    for bc in [Dirichlet, Neumann] {
        let e = energy(bc, 1e3, 1.0).unwrap();
        assert!(e < -1e5);
    }
}

#[test]
fn shooting_agrees_on_grid() {
    for &lambda in &linspace(0.5, 3.0, 5) {
        for &x0 in &linspace(0.2, 4.0, 5) {
            let cfg = DeltaConfig::new(lambda, x0).unwrap();
            let sc = ShootingConfig::for_config(&cfg);
            for bc in [Dirichlet, Neumann] {
                let closed = bound_state_energy(bc, &cfg).map(|s| s.energy());
                let shot = shooting_eigenvalue(bc, &cfg, &sc).unwrap();
                match (closed, shot) {
                    (Some(a), Some(b)) => assert!((a - b).abs() <= 1e-8, "{bc:?} λ={lambda} x0={x0}: {a} vs {b}"),
                    (None, None) => {}
                    other => panic!("{bc:?} λ={lambda} x0={x0}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn eigenfunctions_are_normalized() {
    for bc in [Dirichlet, Neumann] {
        for &(lambda, x0) in &[(1.0, 2.0), (3.0, 0.5), (0.6, 5.0), (1.0, 1.0001)] {
            let Some(s) = bound_state_energy(bc, &DeltaConfig::new(lambda, x0).unwrap()) else {
                continue;
            };
            let end = x0 + 40.0 / s.kappa();
            let q = integrate_pieces(|x| s.wavefunction(x).powi(2), &[0.0, x0, x0 + 1.0 / s.kappa(), end], 1e-11).unwrap();
            assert!((q.value - 1.0).abs() <= 1e-8, "{bc:?} λ={lambda} x0={x0}: {}", q.value);
        }
    }
}

proptest! {
    #[test]
    fn round_trip_x0(lambda in 0.2..5.0f64, alpha in 1.05..10.0f64) {
        let x0 = alpha / lambda;
        for bc in [Dirichlet, Neumann] {
            let e = energy(bc, lambda, x0).unwrap();
            let back = x0_of_energy(bc, lambda, e).unwrap();
            prop_assert!(((back - x0) / x0).abs() <= 1e-10, "{:?}: {} vs {}", bc, back, x0);
        }
    }

    #[test]
    fn energies_in_range(lambda in 0.05..8.0f64, x0 in 0.0..10.0f64) {
        let l2 = lambda * lambda;
        if let Some(e) = energy(Dirichlet, lambda, x0) {
            prop_assert!(e > -l2 / 4.0 && e < 0.0);
        } else {
            prop_assert!(lambda * x0 <= 1.0);
        }
        let e = energy(Neumann, lambda, x0).unwrap();
        prop_assert!(e >= -l2 && e < -l2 / 4.0);
    }

    #[test]
    fn derivative_jump_holds(lambda in 0.1..6.0f64, x0 in 0.05..6.0f64) {
        for bc in [Dirichlet, Neumann] {
            if let Some(s) = bound_state_energy(bc, &DeltaConfig::new(lambda, x0).unwrap()) {
                let psi = s.wavefunction(x0);
                let jump = s.derivative_jump();
                prop_assert!(((jump + lambda * psi) / (lambda * psi)).abs() <= 1e-10);
            }
        }
    }
}
