//! Datasets behind the published energy curves, surfaces and pole loci.

use std::fmt;
use std::str::FromStr;

use halfline_core::resonances::{find_resonances_with, ResonanceOptions};
use halfline_core::spectral::{bound_state_energy, energy_sweep, SweepAxis};
use halfline_core::{BoundaryCondition, DeltaConfig, Error};

use crate::dataset::Table;

/// Coupling values of the fixed-`λ` Dirichlet curves.
pub const FIG1L_LAMBDAS: [f64; 5] = [1.8, 1.85, 1.90, 1.95, 2.0];
/// Positions of the fixed-`x₀` Dirichlet curves; the last is the asymptote.
pub const FIG1R_X0S: [f64; 4] = [1.0 / 3.0, 1.0, 3.0, f64::INFINITY];
pub const FIG4L_LAMBDAS: [f64; 5] = [0.9, 0.95, 1.0, 1.05, 1.1];
pub const FIG4R_X0S: [f64; 4] = [0.1, 1.0, 3.0, f64::INFINITY];
pub const DEFAULT_ALPHAS: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

pub const CURVE_COLUMNS: [&str; 5] = ["curve", "param", "energy", "exists", "asymptotic"];
pub const SURFACE_COLUMNS: [&str; 3] = ["lambda", "x0", "energy"];
pub const LOCUS_COLUMNS: [&str; 7] = ["alpha", "branch", "z1", "z2", "re_k", "im_k", "residual"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    OneLeft,
    OneRight,
    Two,
    Three,
    FourLeft,
    FourRight,
    Five,
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "1L" => FigureId::OneLeft,
            "1R" => FigureId::OneRight,
            "2" => FigureId::Two,
            "3" => FigureId::Three,
            "4L" => FigureId::FourLeft,
            "4R" => FigureId::FourRight,
            "5" => FigureId::Five,
            _ => return Err(format!("unknown figure `{s}` (expected 1L, 1R, 2, 3, 4L, 4R or 5)")),
        })
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FigureId::OneLeft => "1L",
            FigureId::OneRight => "1R",
            FigureId::Two => "2",
            FigureId::Three => "3",
            FigureId::FourLeft => "4L",
            FigureId::FourRight => "4R",
            FigureId::Five => "5",
        })
    }
}

/// Overridable knobs. `None` fields take the per-figure default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOptions {
    /// Points per curve, or cells per side for the surface.
    pub count: Option<usize>,
    /// Axis range of the swept parameter.
    pub range: Option<(f64, f64)>,
    /// Boundary condition of the surface (Dirichlet by default).
    pub bc: Option<BoundaryCondition>,
    pub alphas: Option<Vec<f64>>,
    pub n_max: Option<usize>,
    pub resonance: ResonanceOptions,
}

/// `count` evenly spaced points on `[start, stop]`, endpoints exact.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let h = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { stop } else { start + h * i as f64 })
        .collect()
}

pub fn generate(id: FigureId, opts: &FigureOptions) -> Result<Table, Error> {
    use BoundaryCondition::*;
    let count = opts.count.unwrap_or(200);
    match id {
        FigureId::OneLeft => {
            let (_, hi) = opts.range.unwrap_or((0.0, 5.0));
            curves(Dirichlet, &FIG1L_LAMBDAS, |lambda| {
                let lo = opts.range.map_or(1.0 / lambda, |r| r.0);
                (SweepAxis::X0 { lambda }, linspace(lo, hi, count))
            })
        }
        FigureId::OneRight => {
            let (lo, hi) = opts.range.unwrap_or((0.05, 6.0));
            curves(Dirichlet, &FIG1R_X0S, |x0| (SweepAxis::Lambda { x0 }, linspace(lo, hi, count)))
        }
        FigureId::FourLeft => {
            let (lo, hi) = opts.range.unwrap_or((0.0, 5.0));
            curves(Neumann, &FIG4L_LAMBDAS, |lambda| {
                (SweepAxis::X0 { lambda }, linspace(lo, hi, count))
            })
        }
        FigureId::FourRight => {
            let (lo, hi) = opts.range.unwrap_or((0.05, 3.0));
            curves(Neumann, &FIG4R_X0S, |x0| (SweepAxis::Lambda { x0 }, linspace(lo, hi, count)))
        }
        FigureId::Two => surface(opts.bc.unwrap_or(Dirichlet), opts.count.unwrap_or(60)),
        FigureId::Three => loci(Dirichlet, opts),
        FigureId::Five => loci(Neumann, opts),
    }
}

fn curves(
    bc: BoundaryCondition,
    fixed: &[f64],
    axis: impl Fn(f64) -> (SweepAxis, Vec<f64>),
) -> Result<Table, Error> {
    let mut table = Table::new(&CURVE_COLUMNS);
    for &value in fixed {
        let (axis, grid) = axis(value);
        for p in energy_sweep(bc, axis, &grid)? {
            table.push(vec![
                value.into(),
                p.param.into(),
                p.energy.into(),
                p.exists.into(),
                p.asymptotic.into(),
            ]);
        }
    }
    Ok(table)
}

/// `n × n` cell-corner grid over `λ ∈ (0, 3]`, `x₀ ∈ (0, 5]`. Cells without
/// an eigenvalue carry an empty energy.
fn surface(bc: BoundaryCondition, n: usize) -> Result<Table, Error> {
    let mut table = Table::new(&SURFACE_COLUMNS);
    let n = n.max(1);
    for i in 1..=n {
        let lambda = 3.0 * i as f64 / n as f64;
        for j in 1..=n {
            let x0 = 5.0 * j as f64 / n as f64;
            let cfg = DeltaConfig::new(lambda, x0)?;
            let energy = bound_state_energy(bc, &cfg).map(|s| s.energy());
            table.push(vec![lambda.into(), x0.into(), energy.into()]);
        }
    }
    Ok(table)
}

/// Pole positions for each `α` at `x₀ = 1`, so `λ = α`.
fn loci(bc: BoundaryCondition, opts: &FigureOptions) -> Result<Table, Error> {
    let alphas = opts.alphas.clone().unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
    let n_max = opts.n_max.unwrap_or(5);
    let mut table = Table::new(&LOCUS_COLUMNS);
    for alpha in alphas {
        let cfg = DeltaConfig::new(alpha, 1.0)?;
        let search = find_resonances_with(bc, &cfg, n_max, &opts.resonance)?;
        if let Some(e) = search.failures.into_iter().next() {
            return Err(e);
        }
        for pole in search.poles {
            table.push(vec![
                alpha.into(),
                pole.branch.into(),
                pole.z1.into(),
                pole.z2.into(),
                pole.k.re.into(),
                pole.k.im.into(),
                pole.residual.into(),
            ]);
        }
    }
    Ok(table)
}

/// Distinct values of the `curve` column in first-seen order.
pub fn curve_values(table: &Table) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in table.floats("curve").into_iter().flatten() {
        if !out.iter().any(|u| u.to_bits() == v.to_bits()) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Cell;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.1, 0.7, 7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[6], 0.7);
    }

    #[test]
    fn figure_ids_round_trip() {
        for s in ["1L", "1R", "2", "3", "4L", "4R", "5"] {
            assert_eq!(s.parse::<FigureId>().unwrap().to_string(), s);
        }
        assert!("6".parse::<FigureId>().is_err());
    }

    #[test]
    fn surface_shape() {
        let t = generate(FigureId::Two, &FigureOptions { count: Some(6), ..Default::default() }).unwrap();
        assert_eq!(t.columns, SURFACE_COLUMNS);
        assert_eq!(t.rows.len(), 36);
        // λ = 0.5, x₀ = 5/6 is below threshold
        assert_eq!(t.rows[0][2], Cell::Empty);
    }

    #[test]
    fn loci_at_unit_position() {
        let opts = FigureOptions {
            alphas: Some(vec![2.0]),
            n_max: Some(1),
            ..Default::default()
        };
        let t = generate(FigureId::Three, &opts).unwrap();
        assert_eq!(t.rows.len(), 1);
        let z1 = t.rows[0][2].as_f64().unwrap();
        assert!((z1 - 7.423710758140368).abs() < 1e-9);
    }
}
