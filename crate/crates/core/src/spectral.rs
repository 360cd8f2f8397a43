//! The single bound state of `H₀ - λδ(x - x₀)`.
//!
//! Writing `u = 2κx₀` and `α = λx₀`, the eigenvalue condition
//! `λG(x₀, x₀; -κ²) = 1` becomes
//!
//! * Dirichlet: `α(1 - e^{-u}) = u`, solvable iff `α > 1`, with `u ∈ (0, α)`;
//! * Neumann: `α(1 + e^{-u}) = u`, always solvable, with `u ∈ (α, 2α]`.
//!
//! Both left-hand sides are concave in `u` and cross the diagonal once, so
//! a bracketed bisection finds the root without derivative information.

use alloc::vec::Vec;
use libm::{exp, expm1, log, log1p, sqrt, tanh};

use crate::error::{check_finite, Error, Result};
use crate::kernels::{BoundaryCondition, DeltaConfig};
use crate::roots::bisect;

/// `|α - 1|` at or below which a Dirichlet configuration is treated as
/// sitting exactly on the zero-energy threshold.
pub const THRESHOLD_TOLERANCE: f64 = 4.0 * f64::EPSILON;

/// Bound state of the perturbed half-line operator together with its
/// normalized piecewise eigenfunction
///
/// ```text
/// ψ(x) = A sinh(κx) (Dirichlet) or A cosh(κx) (Neumann),  x ≤ x₀
/// ψ(x) = B exp(-κx),                                      x ≥ x₀
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    energy: f64,
    kappa: f64,
    amplitude_inner: f64,
    amplitude_outer: f64,
    value_at_x0: f64,
    bc: BoundaryCondition,
    cfg: DeltaConfig,
}

impl BoundState {
    fn from_kappa(bc: BoundaryCondition, cfg: DeltaConfig, kappa: f64) -> Self {
        let kappa = keep_inside_window(bc, cfg.lambda(), kappa);
        let x0 = cfg.x0();
        let u = kappa * x0;
        let inner_norm = match bc {
            BoundaryCondition::Dirichlet => {
                if u < 1e-3 {
                    x0 * (1.0 / 3.0 - 2.0 * u * u / 45.0)
                } else {
                    let s = libm::sinh(u);
                    1.0 / (2.0 * kappa * tanh(u)) - x0 / (2.0 * s * s)
                }
            }
            BoundaryCondition::Neumann => {
                let c = libm::cosh(u);
                tanh(u) / (2.0 * kappa) + x0 / (2.0 * c * c)
            }
        };
        let value_at_x0 = 1.0 / sqrt(inner_norm + 1.0 / (2.0 * kappa));
        let amplitude_inner = match bc {
            BoundaryCondition::Dirichlet => value_at_x0 / libm::sinh(u),
            BoundaryCondition::Neumann => value_at_x0 / libm::cosh(u),
        };
        Self {
            energy: -kappa * kappa,
            kappa,
            amplitude_inner,
            amplitude_outer: value_at_x0 * exp(u),
            value_at_x0,
            bc,
            cfg,
        }
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.energy
    }

    #[inline]
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Coefficient `A` of the inner piece. Overflows to zero for `κx₀ ≳ 700`;
    /// evaluation goes through [`Self::wavefunction`], which does not.
    #[inline]
    pub fn amplitude_inner(&self) -> f64 {
        self.amplitude_inner
    }

    /// Coefficient `B` of the outer piece `B e^{-κx}`.
    #[inline]
    pub fn amplitude_outer(&self) -> f64 {
        self.amplitude_outer
    }

    #[inline]
    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    #[inline]
    pub fn config(&self) -> DeltaConfig {
        self.cfg
    }

    /// Normalized eigenfunction `ψ(x)`, `∫₀^∞ ψ² = 1`.
    pub fn wavefunction(&self, x: f64) -> f64 {
        let k = self.kappa;
        let x0 = self.cfg.x0();
        let c = self.value_at_x0;
        if x >= x0 {
            return c * exp(-k * (x - x0));
        }
        let ratio = match self.bc {
            BoundaryCondition::Dirichlet => expm1(-2.0 * k * x) / expm1(-2.0 * k * x0),
            BoundaryCondition::Neumann => (1.0 + exp(-2.0 * k * x)) / (1.0 + exp(-2.0 * k * x0)),
        };
        c * exp(k * (x - x0)) * ratio
    }

    /// `ψ'(x)`; at `x = x₀` the outer (right) derivative is returned.
    pub fn derivative(&self, x: f64) -> f64 {
        let k = self.kappa;
        let x0 = self.cfg.x0();
        let c = self.value_at_x0;
        if x >= x0 {
            return -k * c * exp(-k * (x - x0));
        }
        let ratio = match self.bc {
            BoundaryCondition::Dirichlet => (1.0 + exp(-2.0 * k * x)) / -expm1(-2.0 * k * x0),
            BoundaryCondition::Neumann => -expm1(-2.0 * k * x) / (1.0 + exp(-2.0 * k * x0)),
        };
        k * c * exp(k * (x - x0)) * ratio
    }

    /// `ψ'(x₀⁺) - ψ'(x₀⁻)` from the two closed-form pieces.
    pub fn derivative_jump(&self) -> f64 {
        let k = self.kappa;
        let x0 = self.cfg.x0();
        let c = self.value_at_x0;
        let inner = match self.bc {
            BoundaryCondition::Dirichlet => {
                if x0 == 0.0 {
                    return f64::NAN;
                }
                k * c * (1.0 + exp(-2.0 * k * x0)) / -expm1(-2.0 * k * x0)
            }
            BoundaryCondition::Neumann => k * c * -expm1(-2.0 * k * x0) / (1.0 + exp(-2.0 * k * x0)),
        };
        -k * c - inner
    }
}

/// For `λx₀ ≳ 37` the root `κ` rounds onto the asymptote `λ/2`, which lies
/// outside the open energy window. Step it back by whole ulps so that
/// `-κ²` stays strictly inside, and keep `κ ≤ λ`.
fn keep_inside_window(bc: BoundaryCondition, lambda: f64, mut kappa: f64) -> f64 {
    let quarter = asymptotic_energy(lambda);
    match bc {
        BoundaryCondition::Dirichlet => {
            while -kappa * kappa <= quarter && kappa > 0.0 {
                kappa = kappa.next_down();
            }
        }
        BoundaryCondition::Neumann => {
            kappa = kappa.min(lambda);
            while -kappa * kappa >= quarter {
                kappa = kappa.next_up();
            }
        }
    }
    kappa
}

/// Eigenfunction value `ψ(x)` of a bound state.
pub fn eigenfunction(state: &BoundState, x: f64) -> f64 {
    state.wavefunction(x)
}

/// Whether a Dirichlet configuration sits on the zero-energy threshold
/// `λx₀ = 1`.
pub fn at_dirichlet_threshold(cfg: &DeltaConfig) -> bool {
    (cfg.alpha() - 1.0).abs() <= THRESHOLD_TOLERANCE
}

/// Smallest `x₀` for which the Dirichlet bound state exists at coupling `λ`
/// (exclusive): `1/λ`.
pub fn dirichlet_threshold_x0(lambda: f64) -> f64 {
    1.0 / lambda
}

/// Large-`x₀` limit `-λ²/4` shared by both boundary conditions.
pub fn asymptotic_energy(lambda: f64) -> f64 {
    -0.25 * lambda * lambda
}

/// Solve the bound-state equation. `None` means there is no L² eigenvalue,
/// which happens only for a Dirichlet wall with `λx₀ ≤ 1`.
pub fn bound_state_energy(bc: BoundaryCondition, cfg: &DeltaConfig) -> Option<BoundState> {
    let alpha = cfg.alpha();
    let x0 = cfg.x0();
    match bc {
        BoundaryCondition::Dirichlet => {
            if !(alpha > 1.0) {
                return None;
            }
            let u = bisect(|u| -alpha * expm1(-u) - u, f64::MIN_POSITIVE, alpha, 0.0)?;
            Some(BoundState::from_kappa(bc, *cfg, u / (2.0 * x0)))
        }
        BoundaryCondition::Neumann => {
            if x0 == 0.0 {
                return Some(BoundState::from_kappa(bc, *cfg, cfg.lambda()));
            }
            let u = bisect(|u| alpha * (1.0 + exp(-u)) - u, alpha, 2.0 * alpha, 0.0)?;
            Some(BoundState::from_kappa(bc, *cfg, u / (2.0 * x0)))
        }
    }
}

/// Inverse map `x₀(E)`: the interaction position at which `E` is the
/// eigenvalue. Dirichlet accepts `-λ²/4 < E ≤ 0` (with `x₀(0) = 1/λ`),
/// Neumann accepts `-λ² ≤ E < -λ²/4`.
pub fn x0_of_energy(bc: BoundaryCondition, lambda: f64, energy: f64) -> Result<f64> {
    check_finite("lambda", lambda)?;
    check_finite("energy", energy)?;
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
        });
    }
    let quarter = asymptotic_energy(lambda);
    match bc {
        BoundaryCondition::Dirichlet => {
            if !(energy > quarter && energy <= 0.0) {
                return Err(Error::Domain {
                    energy,
                    lower: quarter,
                    upper: 0.0,
                });
            }
            if energy == 0.0 {
                return Ok(1.0 / lambda);
            }
            let kappa = sqrt(-energy);
            Ok(-log1p(-2.0 * kappa / lambda) / (2.0 * kappa))
        }
        BoundaryCondition::Neumann => {
            let lower = -lambda * lambda;
            if !(energy >= lower && energy < quarter) {
                return Err(Error::Domain {
                    energy,
                    lower,
                    upper: quarter,
                });
            }
            let kappa = sqrt(-energy);
            let s = 2.0 * kappa / lambda - 1.0;
            // rounding can push s a hair above one at E = -λ²
            Ok((-log(s) / (2.0 * kappa)).max(0.0))
        }
    }
}

/// Which parameter a sweep varies. The other one is held fixed; a fixed
/// `x0` of `f64::INFINITY` selects the `x₀ → ∞` asymptote.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepAxis {
    /// Grid over `x₀` at fixed `λ`.
    X0 { lambda: f64 },
    /// Grid over `λ` at fixed `x₀`.
    Lambda { x0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub param: f64,
    /// Eigenvalue, or `Some(0.0)` at the Dirichlet threshold.
    pub energy: Option<f64>,
    /// True for a genuine L² eigenvalue.
    pub exists: bool,
    /// True when the row is the `x₀ = ∞` closed-form asymptote.
    pub asymptotic: bool,
}

fn sweep_point(bc: BoundaryCondition, lambda: f64, x0: f64, param: f64) -> Result<SweepPoint> {
    if x0 == f64::INFINITY {
        check_finite("lambda", lambda)?;
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
            });
        }
        return Ok(SweepPoint {
            param,
            energy: Some(asymptotic_energy(lambda)),
            exists: true,
            asymptotic: true,
        });
    }
    let cfg = DeltaConfig::new(lambda, x0)?;
    Ok(match bound_state_energy(bc, &cfg) {
        Some(state) => SweepPoint {
            param,
            energy: Some(state.energy()),
            exists: true,
            asymptotic: false,
        },
        None => SweepPoint {
            param,
            energy: at_dirichlet_threshold(&cfg).then_some(0.0),
            exists: false,
            asymptotic: false,
        },
    })
}

/// Evaluate the bound state along a one-parameter grid.
pub fn energy_sweep(bc: BoundaryCondition, axis: SweepAxis, grid: &[f64]) -> Result<Vec<SweepPoint>> {
    grid.iter()
        .map(|&p| match axis {
            SweepAxis::X0 { lambda } => sweep_point(bc, lambda, p, p),
            SweepAxis::Lambda { x0 } => sweep_point(bc, p, x0, p),
        })
        .collect()
}
