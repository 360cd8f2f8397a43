use halfline_core::kernels::{green_continued, BoundaryCondition, DeltaConfig};
use halfline_core::oracle::grid_pole_scan;
use halfline_core::resonances::{find_resonances, is_confined, pole_residual};
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};
use BoundaryCondition::*;

fn norm(r: (f64, f64)) -> f64 {
    r.0.abs().max(r.1.abs())
}

#[test]
fn continued_condition_holds_at_poles() {
    for &(bc, lambda, x0) in &[(Dirichlet, 2.0, 1.0), (Dirichlet, 2.0, 2.0), (Neumann, 1.0, 1.0), (Neumann, 0.3, 4.0)] {
        let cfg = DeltaConfig::new(lambda, x0).unwrap();
        let s = find_resonances(bc, &cfg, 6).unwrap();
        assert_eq!(s.poles.len(), 6);
        assert!(s.failures.is_empty());
        for p in &s.poles {
            let g = green_continued(bc, &cfg, p.k).unwrap();
            assert!((g - 1.0).norm() <= 1e-9, "{bc:?} branch {}: {g}", p.branch);
            assert!(p.residual <= 1e-10);
            assert!(is_confined(bc, p.z1, p.z2));
        }
    }
}

#[test]
fn poles_are_isolated() {
    for &(bc, alpha) in &[(Dirichlet, 2.0), (Neumann, 1.0)] {
        let s = find_resonances(bc, &DeltaConfig::new(alpha, 1.0).unwrap(), 4).unwrap();
        for p in &s.poles {
            for i in 0..64 {
                let th = TAU * i as f64 / 64.0;
                let r = norm(pole_residual(bc, alpha, p.z1 + 0.1 * th.cos(), p.z2 + 0.1 * th.sin()));
                assert!(r > 1e-3);
            }
        }
    }
}

#[test]
fn consecutive_poles_are_two_pi_apart() {
    for &(bc, alpha) in &[(Dirichlet, 2.0), (Neumann, 1.0), (Dirichlet, 0.5)] {
        let s = find_resonances(bc, &DeltaConfig::new(alpha, 1.0).unwrap(), 8).unwrap();
        assert_eq!(s.poles.len(), 8);
        let gaps: Vec<f64> = s.poles.windows(2).map(|w| w[1].z1 - w[0].z1).collect();
        let last = *gaps.last().unwrap();
        assert!((last - TAU).abs() < 0.05, "{bc:?}: {gaps:?}");
        // z₂ grows slowly along the sequence
        assert!(s.poles.windows(2).all(|w| w[1].z2 > w[0].z2));
    }
}

#[test]
fn scale_invariance() {
    for bc in [Dirichlet, Neumann] {
        let base = find_resonances(bc, &DeltaConfig::new(2.0, 1.5).unwrap(), 4).unwrap();
        for &c in &[0.5, 2.0, 10.0] {
            let scaled = find_resonances(bc, &DeltaConfig::new(2.0 * c, 1.5 / c).unwrap(), 4).unwrap();
            for (a, b) in base.poles.iter().zip(&scaled.poles) {
                assert!((a.z1 - b.z1).abs() < 1e-12 && (a.z2 - b.z2).abs() < 1e-12);
                assert!((b.k - a.k * c).norm() < 1e-12 * b.k.norm());
            }
        }
    }
}

#[test]
fn scan_and_solver_are_in_bijection() {
    for &(bc, alpha, window) in &[
        (Dirichlet, 2.0, (0.0, 15.0)),
        (Neumann, 1.0, (0.0, 20.0)),
        (Dirichlet, 0.6, (0.0, 20.0)),
        (Neumann, 4.0, (0.0, 20.0)),
    ] {
        let z2_window = (0.0, 6.0);
        let res = 400;
        let h1 = (window.1 - window.0) / res as f64;
        let h2 = (z2_window.1 - z2_window.0) / res as f64;
        let s = find_resonances(bc, &DeltaConfig::new(alpha, 1.0).unwrap(), 8).unwrap();
        let inside: Vec<_> = s
            .poles
            .iter()
            .filter(|p| p.z1 > window.0 && p.z1 < window.1 && p.z2 > z2_window.0 && p.z2 < z2_window.1)
            .collect();
        let cands = grid_pole_scan(bc, alpha, window, z2_window, res).unwrap();
        assert_eq!(inside.len(), cands.len(), "{bc:?} α={alpha}: {cands:?}");
        for p in inside {
            assert!(cands.iter().any(|c| (c.z1 - p.z1).abs() <= h1 && (c.z2 - p.z2).abs() <= h2));
        }
    }
}

#[test]
fn dirichlet_scan_with_two_branches() {
    let c = grid_pole_scan(Dirichlet, 2.0, (0.0, 15.0), (0.0, 6.0), 400).unwrap();
    assert_eq!(c.len(), 2, "{c:?}");
    assert!((c[1].z1 - 13.8578).abs() < 0.01 && (c[1].z2 - 1.9752).abs() < 0.01);
}

#[test]
fn lowest_dirichlet_branch_never_resonant() {
    for &alpha in &[0.3, 0.9, 1.0, 1.5, 3.0, 10.0] {
        let s = find_resonances(Dirichlet, &DeltaConfig::new(alpha, 1.0).unwrap(), 2).unwrap();
        assert_eq!(s.skipped, [0]);
        assert!(s.poles.iter().all(|p| p.z1 > PI));
    }
}

proptest! {
    #[test]
    fn mirror_symmetry(alpha in 0.1..5.0f64, z1 in 0.0..30.0f64, z2 in 0.0..4.0f64) {
        for bc in [Dirichlet, Neumann] {
            let a = pole_residual(bc, alpha, z1, z2);
            let b = pole_residual(bc, alpha, -z1, z2);
            prop_assert_eq!(a.0, b.0);
            prop_assert_eq!(a.1, -b.1);
        }
    }
}
