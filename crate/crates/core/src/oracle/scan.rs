//! Exhaustive residual scan of the pole system on a rectangle of the
//! `(z₁, z₂)` plane.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernels::BoundaryCondition;
use crate::resonances::pole_residual;

/// Candidates are reported when the (refined) residual drops below this.
pub const CANDIDATE_THRESHOLD: f64 = 0.1;

const ZOOM_POINTS: usize = 21;
const ZOOM_LEVELS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleCandidate {
    pub z1: f64,
    pub z2: f64,
    /// Max-norm residual at `(z1, z2)`.
    pub residual: f64,
}

fn norm(bc: BoundaryCondition, alpha: f64, z1: f64, z2: f64) -> f64 {
    let (a, b) = pole_residual(bc, alpha, z1, z2);
    let n = a.abs().max(b.abs());
    if n.is_nan() {
        f64::INFINITY
    } else {
        n
    }
}

/// Brute-force zoom around `(c1, c2)` inside a window of half-widths
/// `(w1, w2)`, never leaving the box `bounds`.
fn zoom(
    bc: BoundaryCondition,
    alpha: f64,
    (mut c1, mut c2): (f64, f64),
    (mut w1, mut w2): (f64, f64),
    bounds: [(f64, f64); 2],
) -> PoleCandidate {
    let mut best = norm(bc, alpha, c1, c2);
    for _ in 0..ZOOM_LEVELS {
        let (o1, o2) = (c1, c2);
        for i in 0..ZOOM_POINTS {
            let z1 = o1 - w1 + 2.0 * w1 * i as f64 / (ZOOM_POINTS - 1) as f64;
            if z1 <= bounds[0].0 || z1 >= bounds[0].1 {
                continue;
            }
            for j in 0..ZOOM_POINTS {
                let z2 = o2 - w2 + 2.0 * w2 * j as f64 / (ZOOM_POINTS - 1) as f64;
                if z2 <= bounds[1].0 || z2 >= bounds[1].1 {
                    continue;
                }
                let r = norm(bc, alpha, z1, z2);
                if r < best {
                    best = r;
                    c1 = z1;
                    c2 = z2;
                }
            }
        }
        w1 *= 0.2;
        w2 *= 0.2;
    }
    PoleCandidate {
        z1: c1,
        z2: c2,
        residual: best,
    }
}

/// Cell-centred grid scan of the pole-residual max-norm.
///
/// Every interior grid point that is a local minimum over its eight
/// neighbours, and whose value minus the local variation could fall below
/// [`CANDIDATE_THRESHOLD`], is refined by a nested brute-force zoom over a square
/// window two long cells wide. Candidates whose refined residual is below the threshold are
/// returned in row-major order of their grid cells.
pub fn grid_pole_scan(
    bc: BoundaryCondition,
    alpha: f64,
    z1_range: (f64, f64),
    z2_range: (f64, f64),
    resolution: usize,
) -> Result<Vec<PoleCandidate>> {
    if resolution < 3 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
        });
    }
    for (name, (a, b)) in [("z1_range", z1_range), ("z2_range", z2_range)] {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter { name, value: b - a });
        }
    }
    let n = resolution;
    let h1 = (z1_range.1 - z1_range.0) / n as f64;
    let h2 = (z2_range.1 - z2_range.0) / n as f64;
    let z1_at = |i: usize| z1_range.0 + (i as f64 + 0.5) * h1;
    let z2_at = |j: usize| z2_range.0 + (j as f64 + 0.5) * h2;

    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        let z1 = z1_at(i);
        for j in 0..n {
            values.push(norm(bc, alpha, z1, z2_at(j)));
        }
    }
    let at = |i: usize, j: usize| values[i * n + j];

    // On an anisotropic grid the discrete minimum can sit several short
    // cells away from the root, so the zoom window is square.
    let reach = 2.0 * h1.max(h2);
    let mut out: Vec<PoleCandidate> = Vec::new();
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let v = at(i, j);
            let mut is_min = true;
            let mut spread = 0.0f64;
            for di in [-1isize, 0, 1] {
                for dj in [-1isize, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = ((i as isize + di) as usize, (j as isize + dj) as usize);
                    let w = at(ni, nj);
                    // ties broken by index so a flat pair yields one minimum
                    let before = (ni, nj) < (i, j);
                    if w < v || (w == v && before) {
                        is_min = false;
                    }
                    spread = spread.max((w - v).abs());
                }
            }
            if !is_min || v - spread >= CANDIDATE_THRESHOLD {
                continue;
            }
            let c = zoom(
                bc,
                alpha,
                (z1_at(i), z2_at(j)),
                (reach, reach),
                [z1_range, z2_range],
            );
            if c.residual < CANDIDATE_THRESHOLD
                && !out
                    .iter()
                    .any(|o| (o.z1 - c.z1).abs() <= reach && (o.z2 - c.z2).abs() <= reach)
            {
                out.push(c);
            }
        }
    }
    Ok(out)
}
