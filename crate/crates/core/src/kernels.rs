//! Closed-form resolvent and heat kernels of the half-line Laplacian.
//!
//! With `κ = |E|^{1/2}` the free resolvent kernel is
//!
//! ```text
//! G(x, y; E) = [exp(-κ|x - y|) ∓ exp(-κ(x + y))] / (2κ)
//! ```
//!
//! with the minus sign for a Dirichlet wall and the plus sign for a Neumann
//! wall. The point interaction at `x₀` adds the rank-one Krein correction
//! `λ G(x, x₀) G(x₀, y) / (1 - λ G(x₀, x₀))`.

use libm::{exp, expm1, sqrt};
use num_complex::Complex64;

use crate::error::{check_finite, Error, Result};

/// Default lower bound on `|1 - λG(x₀, x₀; E)|` below which the perturbed
/// kernel refuses to evaluate.
pub const DEFAULT_POLE_GUARD: f64 = 1e-13;

/// Below this value of `2κx₀` the Dirichlet diagonal uses its Taylor series.
const DIAGONAL_SERIES_CUTOFF: f64 = 1e-4;

/// Wall condition at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    /// `ψ(0) = 0`; image term enters with a minus sign.
    Dirichlet,
    /// `ψ'(0) = 0`; image term enters with a plus sign.
    Neumann,
}

impl BoundaryCondition {
    /// Sign multiplying the image term `exp(-κ(x + y))`.
    #[inline]
    pub fn image_sign(self) -> f64 {
        match self {
            BoundaryCondition::Dirichlet => -1.0,
            BoundaryCondition::Neumann => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

impl core::str::FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirichlet" | "Dirichlet" | "D" | "d" => Ok(BoundaryCondition::Dirichlet),
            "neumann" | "Neumann" | "N" | "n" => Ok(BoundaryCondition::Neumann),
            _ => Err(Error::InvalidParameter {
                name: "bc",
                value: f64::NAN,
            }),
        }
    }
}

/// Strength and position of the attractive point interaction.
///
/// `x0 = 0` is accepted: for a Neumann wall it is the limit operator with the
/// Robin-type condition `φ'(0⁺) = -λφ(0⁺)`, for a Dirichlet wall the
/// interaction is absorbed by the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaConfig {
    lambda: f64,
    x0: f64,
    alpha: f64,
}

impl DeltaConfig {
    pub fn new(lambda: f64, x0: f64) -> Result<Self> {
        check_finite("lambda", lambda)?;
        check_finite("x0", x0)?;
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
            });
        }
        if x0 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "x0",
                value: x0,
            });
        }
        Ok(Self {
            lambda,
            x0,
            alpha: lambda * x0,
        })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Dimensionless coupling `α = λ x₀`.
    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// What a [`KernelSample`] was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelParameter {
    Energy(f64),
    Time(f64),
    Momentum(Complex64),
}

/// One evaluated kernel value with its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub bc: BoundaryCondition,
    pub x: f64,
    pub y: f64,
    pub parameter: KernelParameter,
    pub value: Complex64,
}

impl KernelSample {
    pub fn free_green(bc: BoundaryCondition, x: f64, y: f64, energy: f64) -> Result<Self> {
        let value = free_green(bc, x, y, energy)?;
        Ok(Self {
            bc,
            x,
            y,
            parameter: KernelParameter::Energy(energy),
            value: Complex64::new(value, 0.0),
        })
    }

    pub fn perturbed_green(
        bc: BoundaryCondition,
        cfg: &DeltaConfig,
        x: f64,
        y: f64,
        energy: f64,
    ) -> Result<Self> {
        let value = perturbed_green(bc, cfg, x, y, energy)?;
        Ok(Self {
            bc,
            x,
            y,
            parameter: KernelParameter::Energy(energy),
            value: Complex64::new(value, 0.0),
        })
    }

    pub fn heat_kernel(bc: BoundaryCondition, x: f64, y: f64, t: f64) -> Result<Self> {
        let value = heat_kernel(bc, x, y, t)?;
        Ok(Self {
            bc,
            x,
            y,
            parameter: KernelParameter::Time(t),
            value: Complex64::new(value, 0.0),
        })
    }

    /// Continued diagonal sample at `x = y = x₀`.
    pub fn green_continued(bc: BoundaryCondition, cfg: &DeltaConfig, k: Complex64) -> Result<Self> {
        let value = green_continued(bc, cfg, k)?;
        Ok(Self {
            bc,
            x: cfg.x0(),
            y: cfg.x0(),
            parameter: KernelParameter::Momentum(k),
            value,
        })
    }

    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

fn check_coordinate(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::NegativeCoordinate(x));
    }
    Ok(x)
}

fn decay_rate(energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::NonNegativeEnergy(energy));
    }
    Ok(sqrt(-energy))
}

/// `(1 ∓ exp(-2κx₀)) / (2κ)` for `κ ≥ 0`. The Dirichlet branch is finite at
/// `κ = 0` where it equals `x₀`.
pub fn diagonal(bc: BoundaryCondition, x0: f64, kappa: f64) -> f64 {
    let u = 2.0 * kappa * x0;
    match bc {
        BoundaryCondition::Dirichlet => {
            if u < DIAGONAL_SERIES_CUTOFF {
                // (1 - e^{-u}) / u = 1 - u/2 + u²/6 - u³/24 + O(u⁴)
                x0 * (1.0 - u / 2.0 * (1.0 - u / 3.0 * (1.0 - u / 4.0)))
            } else {
                -expm1(-u) / (2.0 * kappa)
            }
        }
        BoundaryCondition::Neumann => (1.0 + exp(-u)) / (2.0 * kappa),
    }
}

fn green_at_rate(bc: BoundaryCondition, x: f64, y: f64, kappa: f64) -> f64 {
    // e^{-κ|x-y|} ∓ e^{-κ(x+y)} = e^{-κ|x-y|} (1 ∓ e^{-2κ min(x, y)})
    let direct = exp(-kappa * (x - y).abs());
    let m = 2.0 * kappa * x.min(y);
    let factor = match bc {
        BoundaryCondition::Dirichlet => -expm1(-m),
        BoundaryCondition::Neumann => 1.0 + exp(-m),
    };
    direct * factor / (2.0 * kappa)
}

/// Free resolvent kernel `G(x, y; E)` for `E < 0`.
pub fn free_green(bc: BoundaryCondition, x: f64, y: f64, energy: f64) -> Result<f64> {
    let x = check_coordinate(x)?;
    let y = check_coordinate(y)?;
    let kappa = decay_rate(energy)?;
    Ok(green_at_rate(bc, x, y, kappa))
}

/// Semigroup kernel `exp(-tH₀)(x, y)` of the free half-line Laplacian.
pub fn heat_kernel(bc: BoundaryCondition, x: f64, y: f64, t: f64) -> Result<f64> {
    let x = check_coordinate(x)?;
    let y = check_coordinate(y)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveTime(t));
    }
    let d = x - y;
    let direct = exp(-d * d / (4.0 * t));
    // (x + y)² - (x - y)² = 4xy
    let r = x * y / t;
    let factor = match bc {
        BoundaryCondition::Dirichlet => -expm1(-r),
        BoundaryCondition::Neumann => 1.0 + exp(-r),
    };
    Ok(direct * factor / (2.0 * sqrt(core::f64::consts::PI * t)))
}

/// Birman–Schwinger scalar `λ G(x₀, x₀; E)`. It equals one exactly at the
/// eigenvalue and the Neumann series of the rank-one perturbation converges
/// iff it is below one.
pub fn birman_schwinger_value(bc: BoundaryCondition, cfg: &DeltaConfig, energy: f64) -> Result<f64> {
    let kappa = decay_rate(energy)?;
    Ok(cfg.lambda() * diagonal(bc, cfg.x0(), kappa))
}

/// Resolvent kernel of `H₀ - λδ(x - x₀)` from the Krein formula, using
/// [`DEFAULT_POLE_GUARD`].
pub fn perturbed_green(
    bc: BoundaryCondition,
    cfg: &DeltaConfig,
    x: f64,
    y: f64,
    energy: f64,
) -> Result<f64> {
    perturbed_green_with_guard(bc, cfg, x, y, energy, DEFAULT_POLE_GUARD)
}

pub fn perturbed_green_with_guard(
    bc: BoundaryCondition,
    cfg: &DeltaConfig,
    x: f64,
    y: f64,
    energy: f64,
    guard: f64,
) -> Result<f64> {
    let x = check_coordinate(x)?;
    let y = check_coordinate(y)?;
    let kappa = decay_rate(energy)?;
    let lambda = cfg.lambda();
    let x0 = cfg.x0();
    let denominator = 1.0 - lambda * diagonal(bc, x0, kappa);
    if denominator == 0.0 || !(denominator.abs() >= guard) {
        return Err(Error::PoleProximity { denominator });
    }
    let free = green_at_rate(bc, x, y, kappa);
    // product written symmetrically so that swapping x and y is bit-exact
    let gx = green_at_rate(bc, x, x0, kappa);
    let gy = green_at_rate(bc, y, x0, kappa);
    Ok(free + lambda * (gx * gy) / denominator)
}

/// `expm1` on the complex plane, accurate near zero.
fn cexpm1(w: Complex64) -> Complex64 {
    let (s, c) = (libm::sin(w.im), libm::cos(w.im));
    let half = libm::sin(0.5 * w.im);
    // e^{a}cos b - 1 = expm1(a) cos b - 2 sin²(b/2)
    let re = expm1(w.re) * c - 2.0 * half * half;
    let im = exp(w.re) * s;
    Complex64::new(re, im)
}

/// Continued diagonal kernel `(1 ∓ e^{2ikx₀}) / (-2ik)` without the coupling.
/// The physical sheet for `E < 0` is `k = iκ` with `κ > 0`.
pub fn continued_diagonal(bc: BoundaryCondition, x0: f64, k: Complex64) -> Result<Complex64> {
    if k.re == 0.0 && k.im == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    if !k.re.is_finite() || !k.im.is_finite() {
        return Err(Error::InvalidParameter {
            name: "k",
            value: f64::NAN,
        });
    }
    let w = Complex64::new(0.0, 2.0 * x0) * k;
    let numerator = match bc {
        // 1 - e^{w}
        BoundaryCondition::Dirichlet => -cexpm1(w),
        // 1 + e^{w} = 2 + expm1(w)
        BoundaryCondition::Neumann => cexpm1(w) + 2.0,
    };
    Ok(numerator / (Complex64::new(0.0, -2.0) * k))
}

/// Continued Birman–Schwinger value `λ(1 ∓ e^{2ikx₀}) / (-2ik)`. At
/// `k = iκ` it agrees with [`birman_schwinger_value`] at `E = -κ²`, and it
/// equals one at every resonance pole.
pub fn green_continued(bc: BoundaryCondition, cfg: &DeltaConfig, k: Complex64) -> Result<Complex64> {
    Ok(continued_diagonal(bc, cfg.x0(), k)? * cfg.lambda())
}
