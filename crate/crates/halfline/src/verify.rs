//! Oracle cross-checks shared by the `verify` subcommand and the
//! acceptance tests.

use halfline_core::kernels::{free_green, perturbed_green};
use halfline_core::oracle::{
    grid_pole_scan, laplace_green, resolvent_identity_check, semigroup_defect, shooting_eigenvalue,
    ShootingConfig,
};
use halfline_core::resonances::{find_resonances_with, ResonanceOptions};
use halfline_core::shell3d::{shell_ground_state, Extension};
use halfline_core::spectral::bound_state_energy;
use halfline_core::{BoundaryCondition, DeltaConfig, Error, ResonancePole};

use BoundaryCondition::*;

/// One named check: the worst defect seen against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    fn from_defects(name: &'static str, tolerance: f64, defects: &[Result<f64, Error>]) -> Self {
        let mut worst = 0.0f64;
        let mut note = None;
        for d in defects {
            match d {
                Ok(v) if v.is_finite() => worst = worst.max(*v),
                Ok(_) => worst = f64::INFINITY,
                Err(e) => {
                    worst = f64::INFINITY;
                    note.get_or_insert_with(|| e.to_string());
                }
            }
        }
        Self {
            name,
            cases: defects.len(),
            worst,
            tolerance,
            passed: worst <= tolerance,
            note,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {:<24} cases={:<4} worst={:.3e} tol={:.0e}",
            self.name, self.cases, self.worst, self.tolerance
        );
        if let Some(n) = &self.note {
            s.push_str(" (");
            s.push_str(n);
            s.push(')');
        }
        s
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    crate::figures::linspace(a, b, n)
}

/// Shooting against the closed-form solver on a 5×5 `(λ, x₀)` grid per
/// boundary condition. Disagreement on existence counts as an infinite
/// defect.
pub fn shooting_check() -> Check {
    let mut defects = Vec::new();
    for bc in [Dirichlet, Neumann] {
        for &lambda in &linspace(0.5, 3.0, 5) {
            for &x0 in &linspace(0.2, 4.0, 5) {
                defects.push(shooting_defect(bc, lambda, x0));
            }
        }
    }
    Check::from_defects("shooting eigenvalues", 1e-8, &defects)
}

fn shooting_defect(bc: BoundaryCondition, lambda: f64, x0: f64) -> Result<f64, Error> {
    let cfg = DeltaConfig::new(lambda, x0)?;
    let exact = bound_state_energy(bc, &cfg).map(|s| s.energy());
    let shot = shooting_eigenvalue(bc, &cfg, &ShootingConfig::for_config(&cfg))?;
    Ok(match (exact, shot) {
        (Some(a), Some(b)) => (a - b).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    })
}

/// `(x, y, E)` points for the Laplace-transform check; nine per boundary
/// condition.
pub const LAPLACE_POINTS: [(f64, f64, f64); 9] = [
    (0.5, 1.0, -1.0),
    (1.0, 1.0, -0.25),
    (2.0, 0.3, -4.0),
    (0.1, 0.2, -0.5),
    (3.0, 1.5, -2.0),
    (0.7, 0.7, -9.0),
    (1.2, 2.5, -0.1),
    (0.05, 4.0, -1.5),
    (2.2, 2.0, -0.8),
];

pub fn laplace_check() -> Check {
    let defects: Vec<_> = [Dirichlet, Neumann]
        .into_iter()
        .flat_map(|bc| LAPLACE_POINTS.iter().map(move |&p| (bc, p)))
        .map(|(bc, (x, y, e))| Ok((laplace_green(bc, x, y, e)? - free_green(bc, x, y, e)?).abs()))
        .collect();
    Check::from_defects("laplace transform", 1e-6, &defects)
}

/// `(bc, λ, x₀, E₁, E₂, x, y)` tuples for the first resolvent identity.
pub const RESOLVENT_TUPLES: [(BoundaryCondition, f64, f64, f64, f64, f64, f64); 8] = [
    (Dirichlet, 1.0, 2.0, -1.0, -2.0, 0.5, 1.5),
    (Dirichlet, 2.0, 1.0, -3.0, -0.5, 1.0, 2.0),
    (Dirichlet, 0.5, 0.5, -0.2, -1.0, 0.3, 0.3),
    (Dirichlet, 3.0, 1.5, -4.0, -6.0, 2.5, 0.1),
    (Neumann, 1.0, 1.0, -1.0, -2.0, 0.5, 1.5),
    (Neumann, 2.0, 0.5, -0.5, -5.0, 0.2, 1.0),
    (Neumann, 0.5, 3.0, -0.3, -0.7, 3.0, 2.0),
    (Neumann, 1.5, 2.0, -3.0, -1.5, 0.0, 4.0),
];

pub fn resolvent_check() -> Check {
    let defects: Vec<_> = RESOLVENT_TUPLES
        .iter()
        .map(|&(bc, lambda, x0, e1, e2, x, y)| {
            let cfg = DeltaConfig::new(lambda, x0)?;
            resolvent_identity_check(bc, &cfg, e1, e2, x, y)
        })
        .collect();
    Check::from_defects("resolvent identity", 1e-6, &defects)
}

/// `(bc, x, y, t, s)` tuples for the semigroup property.
pub const SEMIGROUP_TUPLES: [(BoundaryCondition, f64, f64, f64, f64); 8] = [
    (Dirichlet, 0.5, 1.0, 0.3, 0.7),
    (Dirichlet, 1.0, 1.0, 1.0, 1.0),
    (Dirichlet, 0.1, 2.0, 0.05, 2.0),
    (Dirichlet, 3.0, 0.5, 4.0, 0.5),
    (Neumann, 0.5, 1.0, 0.3, 0.7),
    (Neumann, 0.0, 0.0, 1.0, 1.0),
    (Neumann, 0.2, 2.5, 0.1, 3.0),
    (Neumann, 2.0, 1.0, 2.0, 0.25),
];

pub fn semigroup_check() -> Check {
    let defects: Vec<_> = SEMIGROUP_TUPLES
        .iter()
        .map(|&(bc, x, y, t, s)| semigroup_defect(bc, x, y, t, s))
        .collect();
    Check::from_defects("semigroup property", 1e-8, &defects)
}

/// Outcome of matching solver poles against grid-scan candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct Bijection {
    pub poles: Vec<ResonancePole>,
    pub candidates: usize,
    pub spacing: f64,
    /// Largest pole-to-candidate distance under the matching.
    pub worst_distance: f64,
    pub matched: bool,
}

/// Scan a window enclosing every pole with spacing at most `0.05` and
/// match candidates to poles one-to-one.
pub fn scan_bijection(
    bc: BoundaryCondition,
    alpha: f64,
    n_max: usize,
    opts: &ResonanceOptions,
) -> Result<Bijection, Error> {
    let cfg = DeltaConfig::new(alpha, 1.0)?;
    let search = find_resonances_with(bc, &cfg, n_max, opts)?;
    let poles = search.poles;
    let z1_hi = poles.iter().map(|p| p.z1).fold(1.0, f64::max) + 1.0;
    let z2_hi = poles.iter().map(|p| p.z2).fold(1.0, f64::max) + 1.0;
    let resolution = (z1_hi.max(z2_hi) / 0.05).ceil() as usize;
    let spacing = z1_hi.max(z2_hi) / resolution as f64;
    let cands = grid_pole_scan(bc, alpha, (0.0, z1_hi), (0.0, z2_hi), resolution)?;

    let mut used = vec![false; cands.len()];
    let mut worst = 0.0f64;
    let mut matched = cands.len() == poles.len();
    for p in &poles {
        let best = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, c)| (i, (c.z1 - p.z1).hypot(c.z2 - p.z2)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= spacing => {
                used[i] = true;
                worst = worst.max(d);
            }
            _ => {
                matched = false;
                worst = f64::INFINITY;
            }
        }
    }
    Ok(Bijection {
        poles,
        candidates: cands.len(),
        spacing,
        worst_distance: worst,
        matched,
    })
}

pub fn resonance_check(opts: &ResonanceOptions) -> Check {
    let defects: Vec<_> = [(Dirichlet, 2.0), (Neumann, 1.0)]
        .into_iter()
        .map(|(bc, alpha)| {
            let b = scan_bijection(bc, alpha, 5, opts)?;
            Ok(if b.matched && b.poles.len() == 5 {
                b.worst_distance / b.spacing
            } else {
                f64::INFINITY
            })
        })
        .collect();
    // defect is the matching distance in units of grid spacing
    Check::from_defects("resonance scan bijection", 1.0, &defects)
}

/// Shell ground states reproduce the half-line eigenvalues exactly.
pub fn shell_check() -> Check {
    let mut defects = Vec::new();
    for &lambda in &linspace(0.3, 5.0, 10) {
        for &r0 in &linspace(0.1, 4.0, 10) {
            for (ext, bc) in [(Extension::DeltaInf0, Dirichlet), (Extension::Delta00, Neumann)] {
                defects.push((|| {
                    let shell = shell_ground_state(ext, lambda, r0)?;
                    let line = bound_state_energy(bc, &DeltaConfig::new(lambda, r0)?).map(|s| s.energy());
                    Ok(match (shell, line) {
                        (Some(a), Some(b)) if a.to_bits() == b.to_bits() => 0.0,
                        (None, None) => 0.0,
                        _ => f64::INFINITY,
                    })
                })());
            }
        }
    }
    Check::from_defects("shell correspondence", 0.0, &defects)
}

/// Krein kernel is finite away from the eigenvalue; a cheap smoke check.
fn perturbed_finite() -> Check {
    let defects: Vec<_> = [Dirichlet, Neumann]
        .into_iter()
        .map(|bc| {
            let cfg = DeltaConfig::new(1.0, 1.0)?;
            let g = perturbed_green(bc, &cfg, 0.5, 1.5, -2.0)?;
            Ok(if g.is_finite() && g > 0.0 { 0.0 } else { f64::INFINITY })
        })
        .collect();
    Check::from_defects("perturbed kernel", 0.0, &defects)
}

pub fn run_all(opts: &ResonanceOptions) -> Vec<Check> {
    vec![
        perturbed_finite(),
        laplace_check(),
        resolvent_check(),
        semigroup_check(),
        shooting_check(),
        resonance_check(opts),
        shell_check(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_case_reports_infinite_defect() {
        let c = Check::from_defects("x", 1.0, &[Ok(0.5), Err(Error::ZeroMomentum)]);
        assert!(!c.passed);
        assert!(c.note.is_some());
        assert!(c.line().starts_with("FAIL"));
    }

    #[test]
    fn laplace_points_pass() {
        assert!(laplace_check().passed);
    }
}
