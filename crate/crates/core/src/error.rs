use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("real-energy kernel requires E < 0, got E = {0}")]
    NonNegativeEnergy(f64),

    #[error("coordinates must be nonnegative, got {0}")]
    NegativeCoordinate(f64),

    #[error("heat kernel requires t > 0, got t = {0}")]
    NonPositiveTime(f64),

    #[error("continued kernel is undefined at k = 0")]
    ZeroMomentum,

    #[error("energy too close to the eigenvalue: |1 - λG(x₀,x₀;E)| = {denominator:e}")]
    PoleProximity { denominator: f64 },

    #[error("energy {energy} outside the admissible window [{lower}, {upper}]")]
    Domain { energy: f64, lower: f64, upper: f64 },

    #[error("no bound state for λ = {lambda}, x₀ = {x0}")]
    NoBoundState { lambda: f64, x0: f64 },

    #[error("damped Newton did not converge on branch {branch} (residual {residual:e})")]
    Convergence { branch: usize, residual: f64 },

    #[error("adaptive quadrature failed: estimate {estimate}, error {error:e}")]
    QuadratureFailure { estimate: f64, error: f64 },
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}
