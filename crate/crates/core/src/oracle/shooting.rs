//! Shooting eigensolver for `-ψ'' - λδ(x - x₀)ψ = Eψ` on the half line.
//!
//! The solver integrates the ODE from the wall with classical RK4, applies
//! the derivative jump `ψ'(x₀⁺) = ψ'(x₀⁻) - λψ(x₀)` and bisects `E` on the
//! decay mismatch at `x_max`. Between the wall, `x₀` and `x_max` the
//! coefficient is constant, so one RK4 step is a fixed 2×2 matrix and `N`
//! steps are its `N`-th power, taken by repeated squaring.

use libm::{ceil, sqrt};

use crate::error::{Error, Result};
use crate::kernels::{BoundaryCondition, DeltaConfig};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Nominal integrator step.
    pub step: f64,
    /// Matching point for the decay condition.
    pub x_max: f64,
    /// Absolute bisection tolerance on `E`.
    pub tol: f64,
}

impl ShootingConfig {
    /// Step `1e-4 · min(1, 1/λ)`, matching point `x₀ + 15/κ_est` with the
    /// asymptotic rate `κ_est = λ/2`.
    pub fn for_config(cfg: &DeltaConfig) -> Self {
        let lambda = cfg.lambda();
        Self {
            step: 1e-4 * (1.0f64).min(1.0 / lambda),
            x_max: cfg.x0() + 15.0 / (0.5 * lambda),
            tol: 1e-14 * (1.0f64).max(lambda * lambda),
        }
    }

    pub fn validate(&self, cfg: &DeltaConfig) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidParameter {
                name: "step",
                value: self.step,
            });
        }
        let kappa_est = 0.5 * cfg.lambda();
        if !(self.x_max > cfg.x0() + 10.0 / kappa_est) || !self.x_max.is_finite() {
            return Err(Error::InvalidParameter {
                name: "x_max",
                value: self.x_max,
            });
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tol",
                value: self.tol,
            });
        }
        Ok(())
    }
}

type Mat = [[f64; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn apply(m: &Mat, v: (f64, f64)) -> (f64, f64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

/// One classical RK4 step for `(ψ, ψ')' = A (ψ, ψ')`, `A = [[0, 1], [κ², 0]]`.
fn rk4_step_matrix(kappa_sq: f64, h: f64) -> Mat {
    let a: Mat = [[0.0, 1.0], [kappa_sq, 0.0]];
    let stage = |v: (f64, f64)| apply(&a, v);
    let mut columns = [(0.0, 0.0); 2];
    for (j, e) in [(1.0, 0.0), (0.0, 1.0)].into_iter().enumerate() {
        let k1 = stage(e);
        let k2 = stage((e.0 + 0.5 * h * k1.0, e.1 + 0.5 * h * k1.1));
        let k3 = stage((e.0 + 0.5 * h * k2.0, e.1 + 0.5 * h * k2.1));
        let k4 = stage((e.0 + h * k3.0, e.1 + h * k3.1));
        columns[j] = (
            e.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            e.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
    }
    [[columns[0].0, columns[1].0], [columns[0].1, columns[1].1]]
}

fn power(m: &Mat, mut n: u64) -> Mat {
    let mut result: Mat = [[1.0, 0.0], [0.0, 1.0]];
    let mut base = *m;
    while n > 0 {
        if n & 1 == 1 {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        n >>= 1;
    }
    result
}

/// Propagate `(ψ, ψ')` over `length` with RK4 steps no longer than `step`.
fn propagate(state: (f64, f64), kappa_sq: f64, length: f64, step: f64) -> (f64, f64) {
    if length <= 0.0 {
        return state;
    }
    let n = ceil(length / step).max(1.0);
    let h = length / n;
    let m = power(&rk4_step_matrix(kappa_sq, h), n as u64);
    let out = apply(&m, state);
    // renormalize; only the direction of (ψ, ψ') matters
    let scale = out.0.abs().max(out.1.abs());
    if scale > 0.0 && scale.is_finite() {
        (out.0 / scale, out.1 / scale)
    } else {
        out
    }
}

/// Decay mismatch `ψ'(x_max) + κψ(x_max)` for a trial energy `E = -κ²`.
///
/// This is the log-derivative condition `ψ'/ψ + κ = 0` multiplied through by
/// `ψ`, which has the same zero without the pole where `ψ(x_max)` vanishes.
pub fn decay_mismatch(bc: BoundaryCondition, cfg: &DeltaConfig, sc: &ShootingConfig, energy: f64) -> f64 {
    let kappa_sq = -energy;
    let kappa = sqrt(kappa_sq);
    let start = match bc {
        BoundaryCondition::Dirichlet => (0.0, 1.0),
        BoundaryCondition::Neumann => (1.0, 0.0),
    };
    let x0 = cfg.x0();
    let (psi, dpsi) = propagate(start, kappa_sq, x0, sc.step);
    let after_jump = (psi, dpsi - cfg.lambda() * psi);
    let (psi, dpsi) = propagate(after_jump, kappa_sq, sc.x_max - x0, sc.step);
    dpsi + kappa * psi
}

/// Bound-state energy by shooting, or `None` if the mismatch keeps its sign
/// over `(-λ², 0)`.
pub fn shooting_eigenvalue(bc: BoundaryCondition, cfg: &DeltaConfig, sc: &ShootingConfig) -> Result<Option<f64>> {
    sc.validate(cfg)?;
    let l2 = cfg.lambda() * cfg.lambda();
    let lo = -l2 * (1.0 + 1e-6);
    let hi = -l2 * 1e-12;
    Ok(bisect(|e| decay_mismatch(bc, cfg, sc, e), lo, hi, sc.tol))
}
