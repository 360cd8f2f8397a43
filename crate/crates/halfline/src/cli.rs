//! Argument parsing and subcommand dispatch.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use halfline_core::kernels::{free_green, green_continued, heat_kernel, perturbed_green};
use halfline_core::resonances::{find_resonances_with, ResonanceOptions};
use halfline_core::shell3d::{radial_ground_wavefunction, shell_ground_state, Extension};
use halfline_core::spectral::{
    asymptotic_energy, bound_state_energy, dirichlet_threshold_x0, energy_sweep, SweepAxis,
};
use halfline_core::{BoundaryCondition, Complex64, DeltaConfig, Error};

use crate::dataset::{Cell, Table};
use crate::figures::{self, FigureId, FigureOptions};
use crate::verify;

#[derive(Debug, Parser, Serialize)]
#[command(name = "halfline", version, about = "Point interactions on the half-line: kernels, bound states and resonances")]
pub struct Cli {
    /// Write the dataset here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Acceptance tolerance for resonance residuals.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bc {
    Dirichlet,
    Neumann,
}

impl From<Bc> for BoundaryCondition {
    fn from(b: Bc) -> Self {
        match b {
            Bc::Dirichlet => BoundaryCondition::Dirichlet,
            Bc::Neumann => BoundaryCondition::Neumann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ext {
    /// Hard wall at the origin, matching the Dirichlet half-line.
    Inf0,
    /// Free origin, matching the Neumann half-line.
    Zero,
}

impl From<Ext> for Extension {
    fn from(e: Ext) -> Self {
        match e {
            Ext::Inf0 => Extension::DeltaInf0,
            Ext::Zero => Extension::Delta00,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    X0,
    Lambda,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Free or perturbed Green function, or its continuation to complex momentum.
    Green(GreenArgs),
    /// Free heat kernel.
    Heat(HeatArgs),
    /// Ground state of a single configuration.
    Bound(BoundArgs),
    /// Resonance poles branch by branch.
    Resonances(ResonanceArgs),
    /// Bound-state energy along a one-parameter grid.
    Sweep(SweepArgs),
    /// Dataset behind one of the energy or pole figures.
    Figure(FigureArgs),
    /// Ground state of the spherical shell.
    Shell3d(ShellArgs),
    /// Run the oracle cross-checks.
    Verify,
}

#[derive(Debug, Args, Serialize)]
pub struct GreenArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub y: f64,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "k_re")]
    pub energy: Option<f64>,
    /// Coupling; with --x0 selects the perturbed kernel.
    #[arg(long, requires = "x0")]
    pub lambda: Option<f64>,
    #[arg(long, requires = "lambda")]
    pub x0: Option<f64>,
    /// Real part of the momentum for the continued diagonal value.
    #[arg(long, allow_negative_numbers = true, requires_all = ["k_im", "lambda"], conflicts_with = "energy")]
    pub k_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "k_re")]
    pub k_im: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct HeatArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub y: f64,
    #[arg(long)]
    pub t: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long)]
    pub lambda: f64,
    /// Position, or `inf` for the far-wall asymptote.
    #[arg(long, value_parser = parse_x0)]
    pub x0: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ResonanceArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub x0: f64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long, value_enum)]
    pub over: Over,
    /// Fixed coupling when sweeping over x0.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Fixed position when sweeping over lambda; `inf` allowed.
    #[arg(long, value_parser = parse_x0)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub count: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct FigureArgs {
    /// One of 1L, 1R, 2, 3, 4L, 4R, 5.
    #[serde(serialize_with = "display")]
    pub id: FigureId,
    /// Points per curve, or cells per side of the surface.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub count: Option<u32>,
    /// Override the swept axis range.
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long, requires = "start")]
    pub stop: Option<f64>,
    /// Boundary condition of the figure 2 surface.
    #[arg(long, value_enum)]
    pub bc: Option<Bc>,
    /// Comma-separated coupling list for the pole figures (x0 = 1).
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct ShellArgs {
    #[arg(long, value_enum)]
    pub ext: Ext,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub r0: f64,
    /// Also evaluate the normalised radial wavefunction here.
    #[arg(long)]
    pub r: Option<f64>,
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn parse_x0(s: &str) -> Result<f64, String> {
    match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .map_err(|e| e.to_string())
            .and_then(|v| if v.is_finite() { Ok(v) } else { Err("non-finite position".into()) }),
    }
}

/// Failure of a run, mapped to an exit status by [`CliError::exit_code`].
#[derive(Debug)]
pub enum CliError {
    /// Rejected input.
    Usage(String),
    /// A solver or oracle did not succeed.
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence { .. } | Error::QuadratureFailure { .. } | Error::PoleProximity { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// What a run produced: the dataset plus diagnostics destined for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub notes: Vec<String>,
    /// Set when the dataset is complete but some part of the run failed.
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self {
            table,
            notes: Vec::new(),
            failure: None,
        }
    }
}

fn resonance_options(tol: Option<f64>) -> Result<ResonanceOptions, CliError> {
    let mut o = ResonanceOptions::default();
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        o.accept_tol = t;
        o.newton_tol = o.newton_tol.min(t * 1e-2);
    }
    Ok(o)
}

/// Evaluate a parsed command line without touching stdout or files.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ropts = resonance_options(cli.tol)?;
    match &cli.command {
        Command::Green(a) => green(a),
        Command::Heat(a) => {
            let v = heat_kernel(a.bc.into(), a.x, a.y, a.t)?;
            let mut t = Table::new(&["x", "y", "t", "value"]);
            t.push(vec![a.x.into(), a.y.into(), a.t.into(), v.into()]);
            Ok(Outcome::ok(t))
        }
        Command::Bound(a) => bound(a),
        Command::Resonances(a) => resonances(a, &ropts),
        Command::Sweep(a) => sweep(a),
        Command::Figure(a) => {
            let opts = FigureOptions {
                count: a.count.map(|c| c as usize),
                range: a.start.zip(a.stop),
                bc: a.bc.map(Into::into),
                alphas: a.alphas.clone(),
                n_max: a.n_max.map(|n| n as usize),
                resonance: ropts,
            };
            if a.start.is_some() != a.stop.is_some() {
                return Err(CliError::Usage("--start and --stop go together".into()));
            }
            Ok(Outcome::ok(figures::generate(a.id, &opts)?))
        }
        Command::Shell3d(a) => shell(a),
        Command::Verify => {
            let checks = verify::run_all(&ropts);
            let mut t = Table::new(&["check", "cases", "worst", "tolerance", "passed"]);
            let mut failed = Vec::new();
            for c in &checks {
                if !c.passed {
                    failed.push(c.name);
                }
                t.push(vec![
                    Cell::Text(c.name.into()),
                    c.cases.into(),
                    c.worst.into(),
                    c.tolerance.into(),
                    c.passed.into(),
                ]);
            }
            Ok(Outcome {
                table: t,
                notes: checks.iter().map(verify::Check::line).collect(),
                failure: (!failed.is_empty())
                    .then(|| CliError::Numerical(format!("failed checks: {}", failed.join(", ")))),
            })
        }
    }
}

fn green(a: &GreenArgs) -> Result<Outcome, CliError> {
    let bc = a.bc.into();
    if let (Some(re), Some(im)) = (a.k_re, a.k_im) {
        let lambda = a.lambda.unwrap_or_default();
        let cfg = DeltaConfig::new(lambda, a.x0.unwrap_or_default())?;
        let v = green_continued(bc, &cfg, Complex64::new(re, im))?;
        let mut t = Table::new(&["lambda", "x0", "re_k", "im_k", "re", "im"]);
        t.push(vec![lambda.into(), cfg.x0().into(), re.into(), im.into(), v.re.into(), v.im.into()]);
        return Ok(Outcome::ok(t));
    }
    let energy = a.energy.ok_or_else(|| CliError::Usage("--energy is required".into()))?;
    let mut t = Table::new(&["x", "y", "energy", "value"]);
    let v = match (a.lambda, a.x0) {
        (Some(lambda), Some(x0)) => perturbed_green(bc, &DeltaConfig::new(lambda, x0)?, a.x, a.y, energy)?,
        _ => free_green(bc, a.x, a.y, energy)?,
    };
    t.push(vec![a.x.into(), a.y.into(), energy.into(), v.into()]);
    Ok(Outcome::ok(t))
}

fn bound(a: &BoundArgs) -> Result<Outcome, CliError> {
    let bc: BoundaryCondition = a.bc.into();
    let mut t = Table::new(&["lambda", "x0", "energy", "kappa", "exists"]);
    let mut notes = Vec::new();
    if a.x0 == f64::INFINITY {
        let p = energy_sweep(bc, SweepAxis::Lambda { x0: a.x0 }, &[a.lambda])?[0];
        let e = p.energy.unwrap_or(asymptotic_energy(a.lambda));
        t.push(vec![a.lambda.into(), a.x0.into(), e.into(), (0.5 * a.lambda).into(), true.into()]);
        return Ok(Outcome::ok(t));
    }
    let cfg = DeltaConfig::new(a.lambda, a.x0)?;
    match bound_state_energy(bc, &cfg) {
        Some(s) => t.push(vec![
            a.lambda.into(),
            a.x0.into(),
            s.energy().into(),
            s.kappa().into(),
            true.into(),
        ]),
        None => {
            notes.push(format!(
                "no bound state (threshold: x0 = {})",
                dirichlet_threshold_x0(a.lambda)
            ));
            t.push(vec![a.lambda.into(), a.x0.into(), Cell::Empty, Cell::Empty, false.into()]);
        }
    }
    Ok(Outcome {
        table: t,
        notes,
        failure: None,
    })
}

pub const RESONANCE_COLUMNS: [&str; 8] = ["branch", "z1", "z2", "re_k", "im_k", "e_r", "gamma", "residual"];

fn resonances(a: &ResonanceArgs, opts: &ResonanceOptions) -> Result<Outcome, CliError> {
    let cfg = DeltaConfig::new(a.lambda, a.x0)?;
    let search = find_resonances_with(a.bc.into(), &cfg, a.n_max as usize, opts)?;
    let mut t = Table::new(&RESONANCE_COLUMNS);
    for p in &search.poles {
        t.push(vec![
            p.branch.into(),
            p.z1.into(),
            p.z2.into(),
            p.k.re.into(),
            p.k.im.into(),
            p.resonance_energy.into(),
            p.width.into(),
            p.residual.into(),
        ]);
    }
    let mut notes = Vec::new();
    if let Some(z2) = search.antibound_z2 {
        notes.push(format!("antibound state at k = -{}i", z2 / (2.0 * a.x0)));
    }
    let failure = (!search.failures.is_empty()).then(|| {
        let list: Vec<String> = search.failures.iter().map(ToString::to_string).collect();
        CliError::Numerical(format!("failed branches: {}", list.join("; ")))
    });
    Ok(Outcome {
        table: t,
        notes,
        failure,
    })
}

pub const SWEEP_COLUMNS: [&str; 4] = ["param", "energy", "exists", "asymptotic"];

fn sweep(a: &SweepArgs) -> Result<Outcome, CliError> {
    let axis = match a.over {
        Over::X0 => {
            if a.x0.is_some() {
                return Err(CliError::Usage("--x0 is the swept axis; fix --lambda instead".into()));
            }
            let lambda = a.lambda.ok_or_else(|| CliError::Usage("--over x0 needs --lambda".into()))?;
            SweepAxis::X0 { lambda }
        }
        Over::Lambda => {
            if a.lambda.is_some() {
                return Err(CliError::Usage("--lambda is the swept axis; fix --x0 instead".into()));
            }
            let x0 = a.x0.ok_or_else(|| CliError::Usage("--over lambda needs --x0".into()))?;
            SweepAxis::Lambda { x0 }
        }
    };
    let grid = figures::linspace(a.start, a.stop, a.count as usize);
    let mut t = Table::new(&SWEEP_COLUMNS);
    for p in energy_sweep(a.bc.into(), axis, &grid)? {
        t.push(vec![p.param.into(), p.energy.into(), p.exists.into(), p.asymptotic.into()]);
    }
    Ok(Outcome::ok(t))
}

fn shell(a: &ShellArgs) -> Result<Outcome, CliError> {
    let ext: Extension = a.ext.into();
    let energy = shell_ground_state(ext, a.lambda, a.r0)?;
    let mut t = Table::new(&["lambda", "r0", "energy", "exists", "r", "wavefunction"]);
    let psi = match (a.r, energy) {
        (Some(r), Some(_)) => Some(radial_ground_wavefunction(ext, a.lambda, a.r0, r)?),
        _ => None,
    };
    t.push(vec![
        a.lambda.into(),
        a.r0.into(),
        energy.into(),
        energy.is_some().into(),
        a.r.into(),
        psi.into(),
    ]);
    Ok(Outcome::ok(t))
}

fn metadata(cli: &Cli) -> serde_json::Value {
    let command = serde_json::to_value(&cli.command).unwrap_or_default();
    let name = match &command {
        serde_json::Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
        serde_json::Value::String(s) => s.clone(),
        _ => String::new(),
    };
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": name,
        "config": {
            "format": cli.format,
            "tol": cli.tol,
            "args": command,
        },
    })
}

/// Encode the dataset in the selected format.
pub fn render(cli: &Cli, table: &Table) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match cli.format {
        Format::Csv => table
            .write_csv(&mut buf)
            .map_err(|e| CliError::Io(io::Error::other(e)))?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &table.to_json(metadata(cli)))
                .map_err(|e| CliError::Io(io::Error::other(e)))?;
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

/// Full run: execute, write the dataset, report notes on `err`. Returns the
/// process exit status.
pub fn run(cli: &Cli, err: &mut dyn Write) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "halfline: {e}");
            return e.exit_code();
        }
    };
    let written = render(cli, &outcome.table).and_then(|bytes| {
        match &cli.out {
            Some(path) => File::create(path)?.write_all(&bytes)?,
            None => io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    });
    for n in &outcome.notes {
        let _ = writeln!(err, "{n}");
    }
    if let Err(e) = written {
        let _ = writeln!(err, "halfline: {e}");
        return e.exit_code();
    }
    match outcome.failure {
        Some(e) => {
            let _ = writeln!(err, "halfline: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
