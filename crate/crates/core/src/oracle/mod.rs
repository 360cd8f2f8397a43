//! Brute-force verifiers that do not reuse the closed forms they check.
//!
//! * [`shooting_eigenvalue`] integrates the ODE and never touches the
//!   Green functions.
//! * [`laplace_green`] rebuilds the free resolvent as the Laplace transform
//!   of the heat kernel.
//! * [`resolvent_identity_check`] tests the Krein kernel against the first
//!   resolvent identity by quadrature.
//! * [`grid_pole_scan`] localizes pole-system roots by exhaustive search.

mod quadrature;
mod scan;
mod shooting;

pub use quadrature::{integrate, integrate_pieces, Quadrature};
pub use scan::{grid_pole_scan, PoleCandidate};
pub use shooting::{decay_mismatch, shooting_eigenvalue, ShootingConfig};

use libm::{exp, log, sqrt};

use crate::error::{Error, Result};
use crate::kernels::{heat_kernel, perturbed_green, BoundaryCondition, DeltaConfig};

/// Absolute tolerance requested from the adaptive quadrature.
pub const QUADRATURE_TOL: f64 = 1e-9;

/// `∫₀^∞ e^{-|E|t} K_t(x, y) dt`, the free resolvent kernel rebuilt from the
/// heat kernel.
///
/// `[0, 1]` is mapped through `t = s²`, which removes the `t^{-1/2}`
/// singularity on the diagonal. The upper limit is chosen so that the
/// neglected tail is below `1e-12`.
pub fn laplace_green(bc: BoundaryCondition, x: f64, y: f64, energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::NonNegativeEnergy(energy));
    }
    if x < 0.0 || y < 0.0 {
        return Err(Error::NegativeCoordinate(x.min(y)));
    }
    let rate = -energy;
    let mut failure = None;
    let mut head = |s: f64| {
        let t = s * s;
        if t == 0.0 {
            return 0.0;
        }
        match heat_kernel(bc, x, y, t) {
            Ok(k) => 2.0 * s * exp(-rate * t) * k,
            Err(e) => {
                failure = Some(e);
                0.0
            }
        }
    };
    let near = integrate(&mut head, 0.0, 1.0, 0.5 * QUADRATURE_TOL, 0.0)?;
    if let Some(e) = failure {
        return Err(e);
    }

    // e^{-|E|t} K_t ≤ e^{-|E|t} / sqrt(πt); the tail beyond T is below
    // e^{-|E|T} / (|E| sqrt(π)).
    let sqrt_pi = sqrt(core::f64::consts::PI);
    let t_end = (log(1e12 / (rate * sqrt_pi)) / rate).max(2.0);
    let mut failure = None;
    let mut tail = |t: f64| match heat_kernel(bc, x, y, t) {
        Ok(k) => exp(-rate * t) * k,
        Err(e) => {
            failure = Some(e);
            0.0
        }
    };
    let pieces = [1.0, 1.0 + 0.1 * (t_end - 1.0), 1.0 + 0.4 * (t_end - 1.0), t_end];
    let far = integrate_pieces(&mut tail, &pieces, 0.5 * QUADRATURE_TOL)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(near.value + far.value)
}

/// `|∫₀^∞ K_t(x, z) K_s(z, y) dz - K_{t+s}(x, y)|`.
pub fn semigroup_defect(bc: BoundaryCondition, x: f64, y: f64, t: f64, s: f64) -> Result<f64> {
    let target = heat_kernel(bc, x, y, t + s)?;
    let width = 40.0 * sqrt(t.max(s));
    let (lo, hi) = (x.min(y), x.max(y));
    let breaks = [0.0, lo, hi, hi + width];
    let q = integrate_pieces(
        |z| heat_kernel(bc, x, z, t).unwrap_or(f64::NAN) * heat_kernel(bc, z, y, s).unwrap_or(f64::NAN),
        &breaks,
        1e-12,
    )?;
    Ok((q.value - target).abs())
}

/// Defect of the first resolvent identity
/// `R(E₁) - R(E₂) = (E₁ - E₂) R(E₁) R(E₂)` for the perturbed kernel, with the
/// operator product evaluated by quadrature over the intermediate point.
pub fn resolvent_identity_check(
    bc: BoundaryCondition,
    cfg: &DeltaConfig,
    e1: f64,
    e2: f64,
    x: f64,
    y: f64,
) -> Result<f64> {
    if e1 == e2 {
        return Err(Error::InvalidParameter {
            name: "e2",
            value: e2,
        });
    }
    let r1 = perturbed_green(bc, cfg, x, y, e1)?;
    let r2 = perturbed_green(bc, cfg, x, y, e2)?;
    // probe once so that pole proximity surfaces as an error, not a NaN
    perturbed_green(bc, cfg, x, cfg.x0(), e1)?;
    perturbed_green(bc, cfg, cfg.x0(), y, e2)?;

    let decay = sqrt(-e1) + sqrt(-e2);
    let mut breaks = [0.0, x, y, cfg.x0(), 0.0];
    breaks[..4].sort_by(f64::total_cmp);
    breaks[4] = breaks[3] + 36.0 / decay;
    let product = integrate_pieces(
        |z| {
            let a = perturbed_green(bc, cfg, x, z, e1).unwrap_or(f64::NAN);
            let b = perturbed_green(bc, cfg, z, y, e2).unwrap_or(f64::NAN);
            a * b
        },
        &breaks,
        1e-11,
    )?;
    Ok((r1 - r2 - (e1 - e2) * product.value).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::free_green;
    use BoundaryCondition::*;

    #[test]
    fn laplace_examples() {
        assert_eq!(laplace_green(Dirichlet, 0.0, 1.0, -1.0).unwrap(), 0.0);
        let v = laplace_green(Neumann, 1.0, 1.0, -0.25).unwrap();
        assert!((v - 1.367_879_441_171_442_3).abs() < 1e-6);
        let v = laplace_green(Dirichlet, 1.0, 2.0, -4.0).unwrap();
        assert!((v - free_green(Dirichlet, 1.0, 2.0, -4.0).unwrap()).abs() < 1e-6);
        assert!(laplace_green(Dirichlet, 1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn free_resolvent_identity() {
        let weak = DeltaConfig::new(1e-12, 1.0).unwrap();
        for bc in [Dirichlet, Neumann] {
            let d = resolvent_identity_check(bc, &weak, -1.0, -2.5, 0.7, 1.9).unwrap();
            assert!(d <= 1e-8, "{bc:?}: {d}");
        }
    }

    #[test]
    fn perturbed_resolvent_identity() {
        let d = resolvent_identity_check(Dirichlet, &DeltaConfig::new(1.0, 2.0).unwrap(), -1.0, -2.0, 1.0, 3.0).unwrap();
        assert!(d <= 1e-6, "{d}");
        let d = resolvent_identity_check(Neumann, &DeltaConfig::new(1.0, 1.0).unwrap(), -2.0, -3.0, 0.5, 0.5).unwrap();
        assert!(d <= 1e-6, "{d}");
    }

    #[test]
    fn identity_reports_pole_proximity() {
        let cfg = DeltaConfig::new(1.5, 0.0).unwrap();
        let err = resolvent_identity_check(Neumann, &cfg, -2.25, -3.0, 0.5, 0.5).unwrap_err();
        assert!(matches!(err, Error::PoleProximity { .. }));
    }

    #[test]
    fn semigroup_small_grid() {
        for bc in [Dirichlet, Neumann] {
            let d = semigroup_defect(bc, 0.3, 1.1, 0.2, 0.7).unwrap();
            assert!(d <= 1e-8, "{bc:?}: {d}");
        }
    }
}
