//! Ground states of the δ-sphere Hamiltonians `-Δ - λδ(r - r₀)` in three
//! dimensions.
//!
//! In the s-wave sector `ψ(r) = u(r)/r` and the radial problem is the
//! half-line operator with a point interaction at `r₀`. The ordinary
//! Laplacian `-Δ∞,₀` imposes `u(0⁺) = 0` (Dirichlet), the extension `-Δ₀,₀`
//! with a zero-energy resonance imposes `u'(0⁺) = 0` (Neumann). The general
//! extension `-Δα,₀` would impose `u'(0⁺) = 4παu(0⁺)` and is not exposed.
//! Higher angular momenta are not handled.

use libm::sqrt;

use crate::error::{Error, Result};
use crate::kernels::{BoundaryCondition, DeltaConfig};
use crate::spectral::{bound_state_energy, BoundState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Ordinary `-Δ`, Dirichlet condition on `u`.
    DeltaInf0,
    /// `-Δ₀,₀`, Neumann condition on `u`.
    Delta00,
}

impl Extension {
    pub fn boundary_condition(self) -> BoundaryCondition {
        match self {
            Extension::DeltaInf0 => BoundaryCondition::Dirichlet,
            Extension::Delta00 => BoundaryCondition::Neumann,
        }
    }
}

fn radial_state(ext: Extension, lambda: f64, r0: f64) -> Result<Option<BoundState>> {
    if !(r0 > 0.0) {
        return Err(Error::InvalidParameter { name: "r0", value: r0 });
    }
    let cfg = DeltaConfig::new(lambda, r0)?;
    Ok(bound_state_energy(ext.boundary_condition(), &cfg))
}

/// s-wave ground-state energy; `None` for `-Δ∞,₀` when `λr₀ ≤ 1`.
pub fn shell_ground_state(ext: Extension, lambda: f64, r0: f64) -> Result<Option<f64>> {
    Ok(radial_state(ext, lambda, r0)?.map(|s| s.energy()))
}

/// `ψ(r) = u(r)/r` normalized so that `4π ∫₀^∞ u² dr = 1`.
///
/// At `r = 0` the `-Δ∞,₀` value is the finite limit `u'(0)`; the `-Δ₀,₀`
/// ground state diverges like `1/r` and `+∞` is returned.
pub fn radial_ground_wavefunction(ext: Extension, lambda: f64, r0: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::NegativeCoordinate(r));
    }
    let state = radial_state(ext, lambda, r0)?.ok_or(Error::NoBoundState { lambda, x0: r0 })?;
    let scale = 1.0 / sqrt(4.0 * core::f64::consts::PI);
    if r == 0.0 {
        return Ok(match ext {
            Extension::DeltaInf0 => scale * state.derivative(0.0),
            Extension::Delta00 => f64::INFINITY,
        });
    }
    Ok(scale * state.wavefunction(r) / r)
}
