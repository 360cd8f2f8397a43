//! Resonance poles of the continued resolvent.
//!
//! Poles sit at `k = (±z₁ - i z₂) / (2x₀)` with `z₂ > 0`, i.e. in the lower
//! half of the momentum plane. Substituting into `λG(x₀, x₀; k) = 1` and
//! splitting real and imaginary parts gives, with `α = λx₀`,
//!
//! ```text
//! Dirichlet:  α(1 - e^{z₂} cos z₁) + z₂ = 0,   α e^{z₂} sin z₁ - z₁ = 0
//! Neumann:    α(1 + e^{z₂} cos z₁) + z₂ = 0,   α e^{z₂} sin z₁ + z₁ = 0
//! ```
//!
//! Eliminating `e^{z₂}` with the second equation leaves one scalar equation
//! per branch, `z₁ cot z₁ - α - ln(±z₁ / (α sin z₁)) = 0`, which changes sign
//! exactly once on `(2πn, 2πn + π/2)` (Dirichlet) or `(2πn + π, 2πn + 3π/2)`
//! (Neumann). The bisection root seeds a damped Newton iteration on the full
//! two-equation system.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use libm::{cos, exp, expm1, log, sin, tan};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{BoundaryCondition, DeltaConfig};
use crate::roots::bisect;

/// Above this `z₂` the Newton iteration works on residuals scaled by
/// `e^{-z₂}`.
const LOG_DOMAIN_Z2: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceOptions {
    pub max_iter: usize,
    /// Newton stops once the max-norm residual is below this.
    pub newton_tol: f64,
    /// ... or once the step is below this (relative to `1 + |z|`).
    pub step_tol: f64,
    /// Poles with a larger final residual are reported as failures.
    pub accept_tol: f64,
}

impl Default for ResonanceOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            newton_tol: 1e-12,
            step_tol: 1e-13,
            accept_tol: 1e-10,
        }
    }
}

/// A resonance pole, stored for the `+z₁` member of the pair `±z₁ - iz₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePole {
    pub bc: BoundaryCondition,
    pub branch: usize,
    pub z1: f64,
    pub z2: f64,
    pub x0: f64,
    /// `(z₁ - iz₂) / (2x₀)`.
    pub k: Complex64,
    /// `E_R - iΓ/2`.
    pub energy: Complex64,
    pub resonance_energy: f64,
    pub width: f64,
    /// Max-norm of [`pole_residual`] at `(z1, z2)`.
    pub residual: f64,
}

impl ResonancePole {
    pub fn new(bc: BoundaryCondition, branch: usize, z1: f64, z2: f64, x0: f64, residual: f64) -> Self {
        let energy = momentum_to_energy(z1, z2, x0);
        Self {
            bc,
            branch,
            z1,
            z2,
            x0,
            k: Complex64::new(z1 / (2.0 * x0), -z2 / (2.0 * x0)),
            energy,
            resonance_energy: energy.re,
            width: -2.0 * energy.im,
            residual,
        }
    }

    /// Same pole for a rescaled configuration `(cλ, x₀/c)`: the `z`-plane
    /// position is unchanged and `k` scales by `c`.
    pub fn with_x0(&self, x0: f64) -> Self {
        Self::new(self.bc, self.branch, self.z1, self.z2, x0, self.residual)
    }
}

/// `E = k²` for `k = (z₁ - iz₂)/(2x₀)`, i.e.
/// `((z₁² - z₂²) - 2i z₁z₂) / (4x₀²)`.
pub fn momentum_to_energy(z1: f64, z2: f64, x0: f64) -> Complex64 {
    let re = (z1 * z1 - z2 * z2) / (4.0 * x0 * x0);
    let gamma = z1 * z2 / (x0 * x0);
    Complex64::new(re, -0.5 * gamma)
}

/// Complex energy `E_R - iΓ/2` of a pole.
pub fn to_energy(pole: &ResonancePole) -> Complex64 {
    momentum_to_energy(pole.z1, pole.z2, pole.x0)
}

/// `α e^{z₂}`, formed in the log domain once `z₂` is large.
fn alpha_exp(alpha: f64, z2: f64) -> f64 {
    if z2 > LOG_DOMAIN_Z2 {
        exp(log(alpha) + z2)
    } else {
        alpha * exp(z2)
    }
}

/// Residuals of the two real pole equations at `(z₁, z₂)`.
pub fn pole_residual(bc: BoundaryCondition, alpha: f64, z1: f64, z2: f64) -> (f64, f64) {
    let a = alpha_exp(alpha, z2);
    let (s, c) = (sin(z1), cos(z1));
    match bc {
        BoundaryCondition::Dirichlet => (alpha - a * c + z2, a * s - z1),
        BoundaryCondition::Neumann => (alpha + a * c + z2, a * s + z1),
    }
}

#[inline]
fn max_norm(r: (f64, f64)) -> f64 {
    let n = r.0.abs().max(r.1.abs());
    if n.is_nan() {
        f64::INFINITY
    } else {
        n
    }
}

/// Residual and Jacobian, both multiplied by `scale`.
fn system(bc: BoundaryCondition, alpha: f64, z1: f64, z2: f64) -> ((f64, f64), [[f64; 2]; 2]) {
    let (s, c) = (sin(z1), cos(z1));
    // for large z₂ divide everything by e^{z₂}; the Newton step is unchanged
    let (a, lin) = if z2 > LOG_DOMAIN_Z2 {
        (alpha, exp(-z2))
    } else {
        (alpha * exp(z2), 1.0)
    };
    match bc {
        BoundaryCondition::Dirichlet => (
            (alpha * lin - a * c + z2 * lin, a * s - z1 * lin),
            [[a * s, -a * c + lin], [a * c - lin, a * s]],
        ),
        BoundaryCondition::Neumann => (
            (alpha * lin + a * c + z2 * lin, a * s + z1 * lin),
            [[-a * s, a * c + lin], [a * c + lin, a * s]],
        ),
    }
}

/// Damped Newton on the pole system. Returns the final point and its
/// (unscaled) max-norm residual.
pub fn refine_pole(
    bc: BoundaryCondition,
    alpha: f64,
    z1: f64,
    z2: f64,
    opts: &ResonanceOptions,
) -> (f64, f64, f64) {
    let mut z = (z1, z2);
    let merit = |z: (f64, f64)| max_norm(system(bc, alpha, z.0, z.1).0);
    for _ in 0..opts.max_iter {
        if max_norm(pole_residual(bc, alpha, z.0, z.1)) <= opts.newton_tol {
            break;
        }
        let (r, j) = system(bc, alpha, z.0, z.1);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !det.is_finite() || det == 0.0 {
            break;
        }
        let dz1 = -(j[1][1] * r.0 - j[0][1] * r.1) / det;
        let dz2 = -(-j[1][0] * r.0 + j[0][0] * r.1) / det;
        let current = max_norm(r);
        let mut t = 1.0;
        let mut accepted = None;
        while t >= 1.0 / 1024.0 {
            let trial = (z.0 + t * dz1, z.1 + t * dz2);
            if merit(trial) < current * (1.0 - 1e-4 * t) {
                accepted = Some(trial);
                break;
            }
            t *= 0.5;
        }
        let next = match accepted {
            Some(p) => p,
            // rounding floor reached: take the full step only if it is tiny
            None => break,
        };
        let step = (next.0 - z.0).abs().max((next.1 - z.1).abs());
        z = next;
        if step <= opts.step_tol * (1.0 + z.0.abs().max(z.1.abs())) {
            break;
        }
    }
    (z.0, z.1, max_norm(pole_residual(bc, alpha, z.0, z.1)))
}

/// `z₁` interval that hosts branch `n`.
pub fn branch_interval(bc: BoundaryCondition, n: usize) -> (f64, f64) {
    let base = TAU * n as f64;
    match bc {
        BoundaryCondition::Dirichlet => (base, base + FRAC_PI_2),
        BoundaryCondition::Neumann => (base + PI, base + PI + FRAC_PI_2),
    }
}

/// `z₂` as a function of `z₁` from the imaginary-part equation.
fn z2_from_z1(bc: BoundaryCondition, alpha: f64, z1: f64) -> f64 {
    match bc {
        BoundaryCondition::Dirichlet => log(z1 / (alpha * sin(z1))),
        BoundaryCondition::Neumann => log(-z1 / (alpha * sin(z1))),
    }
}

/// Scalar reduction of the pole system on one branch.
pub fn branch_function(bc: BoundaryCondition, alpha: f64, z1: f64) -> f64 {
    z1 / tan(z1) - alpha - z2_from_z1(bc, alpha, z1)
}

/// Bisection seed `(z₁, z₂)` for branch `n`, if the reduced equation changes
/// sign there.
pub fn branch_seed(bc: BoundaryCondition, alpha: f64, n: usize) -> Option<(f64, f64)> {
    let (lo, hi) = branch_interval(bc, n);
    let eps = 1e-9 * (1.0 + lo);
    let lo = if lo == 0.0 { 1e-9 } else { lo + eps };
    let hi = hi - eps;
    // the reduced equation blows up to +∞ at the left end of a genuine
    // branch; at z₁ → 0 it only touches zero at the k = 0 threshold
    if !(branch_function(bc, alpha, lo) > 0.0) {
        return None;
    }
    let z1 = bisect(|z| branch_function(bc, alpha, z), lo, hi, 1e-15 * hi)?;
    Some((z1, z2_from_z1(bc, alpha, z1)))
}

/// `z₁ mod 2π` lies in the half period assigned to `bc` and `z₂ > 0`.
pub fn is_confined(bc: BoundaryCondition, z1: f64, z2: f64) -> bool {
    let r = libm::fmod(z1, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    let in_half = match bc {
        BoundaryCondition::Dirichlet => r > 0.0 && r < PI,
        BoundaryCondition::Neumann => r > PI && r < TAU,
    };
    in_half && z2 > 0.0 && z1 > 0.0
}

/// Outcome of a branch-by-branch search.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResonanceSearch {
    /// Converged poles in increasing `z₁`.
    pub poles: Vec<ResonancePole>,
    /// Branches whose reduced equation has no sign change.
    pub skipped: Vec<usize>,
    /// Branches where every seed failed to converge.
    pub failures: Vec<Error>,
    /// `z₂` of an antibound state `k = -iz₂/(2x₀)`, kept apart from the
    /// resonances.
    pub antibound_z2: Option<f64>,
}

/// Search for up to `n_max` resonance poles with default options.
pub fn find_resonances(bc: BoundaryCondition, cfg: &DeltaConfig, n_max: usize) -> Result<ResonanceSearch> {
    find_resonances_with(bc, cfg, n_max, &ResonanceOptions::default())
}

pub fn find_resonances_with(
    bc: BoundaryCondition,
    cfg: &DeltaConfig,
    n_max: usize,
    opts: &ResonanceOptions,
) -> Result<ResonanceSearch> {
    if n_max == 0 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: 0.0,
        });
    }
    if cfg.x0() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "x0",
            value: 0.0,
        });
    }
    let alpha = cfg.alpha();
    let mut out = ResonanceSearch {
        antibound_z2: antibound_state(bc, alpha),
        ..Default::default()
    };
    // the lowest Dirichlet branch never hosts a resonance, so one extra
    // branch is scanned
    for n in 0..=n_max {
        if out.poles.len() == n_max {
            break;
        }
        match solve_branch(bc, alpha, n, opts) {
            BranchOutcome::Pole(z1, z2, residual) => {
                out.poles.push(ResonancePole::new(bc, n, z1, z2, cfg.x0(), residual));
            }
            BranchOutcome::Empty => out.skipped.push(n),
            BranchOutcome::Failed(residual) => out.failures.push(Error::Convergence { branch: n, residual }),
        }
    }
    out.poles.sort_by(|a, b| a.z1.total_cmp(&b.z1));
    Ok(out)
}

enum BranchOutcome {
    Pole(f64, f64, f64),
    Empty,
    Failed(f64),
}

fn solve_branch(bc: BoundaryCondition, alpha: f64, n: usize, opts: &ResonanceOptions) -> BranchOutcome {
    let (lo, hi) = branch_interval(bc, n);
    let Some(seed) = branch_seed(bc, alpha, n) else {
        return BranchOutcome::Empty;
    };
    let mid = 0.5 * (lo + hi);
    let fallbacks = [
        seed,
        (mid, z2_from_z1(bc, alpha, mid)),
        (mid, log(mid / alpha).max(0.1)),
    ];
    let mut best = f64::INFINITY;
    for (z1, z2) in fallbacks {
        if !z1.is_finite() || !z2.is_finite() {
            continue;
        }
        let (z1, z2, residual) = refine_pole(bc, alpha, z1, z2, opts);
        let on_branch = z1 > lo && z1 < lo + PI;
        if residual <= opts.accept_tol && on_branch && is_confined(bc, z1, z2) {
            return BranchOutcome::Pole(z1, z2, residual);
        }
        best = best.min(residual);
    }
    BranchOutcome::Failed(best)
}

/// Antibound (virtual) state on the negative imaginary momentum axis,
/// `k = -iz₂/(2x₀)` with `z₂ > 0`. Only a Dirichlet wall with `α < 1` has
/// one: it solves `α(e^{z₂} - 1) = z₂`.
pub fn antibound_state(bc: BoundaryCondition, alpha: f64) -> Option<f64> {
    match bc {
        BoundaryCondition::Neumann => None,
        BoundaryCondition::Dirichlet => {
            if !(alpha < 1.0) || alpha <= 0.0 {
                return None;
            }
            let g = |z2: f64| z2 - alpha * expm1(z2);
            let mut hi = 1.0;
            while g(hi) > 0.0 {
                hi *= 2.0;
                if hi > 1e3 {
                    return None;
                }
            }
            bisect(g, 1e-300, hi, 0.0)
        }
    }
}
