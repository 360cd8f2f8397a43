//! Spectral toolkit for the half-line Laplacian with a Dirichlet or Neumann
//! wall at the origin, perturbed by an attractive point interaction
//! `-λ δ(x - x₀)`.
//!
//! Units are dimensionless with `ħ = 2m = 1`, so the free Hamiltonian is
//! `-d²/dx²` and an energy `E < 0` corresponds to a decay rate
//! `κ = |E|^{1/2}`.
//!
//! * [`kernels`]: free and perturbed resolvent kernels, heat kernels and the
//!   continuation of the diagonal kernel to complex momentum.
//! * [`spectral`]: the single bound state, its inverse map `x₀(E)` and the
//!   normalized eigenfunction.
//! * [`resonances`]: resonance poles in the lower half of the momentum plane.
//! * [`oracle`]: independent numerical checks (shooting, quadrature, grid
//!   scans) that never evaluate the closed forms they verify.
//! * [`shell3d`]: s-wave ground states of the three-dimensional δ-sphere
//!   Hamiltonians built on the two half-line problems.
//!
//! The bound-state equations coincide with the ones for the full-line
//! symmetric double delta `-d²/dx² - λ[δ(x + x₀) + δ(x - x₀)]` (Dirichlet:
//! odd excited state, Neumann: even ground state), so no separate solver is
//! provided for that operator.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod kernels;
pub mod oracle;
pub mod resonances;
pub mod shell3d;
pub mod spectral;

mod roots;

pub use error::{Error, Result};
pub use kernels::{BoundaryCondition, DeltaConfig, KernelParameter, KernelSample};
pub use num_complex::Complex64;
pub use resonances::{ResonancePole, ResonanceSearch};
pub use shell3d::Extension;
pub use spectral::BoundState;
