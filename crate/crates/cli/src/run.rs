//! `solve` and `sweep`.

use deltabound::closedform::{closedform_spectrum, merged_limit_energy};
use deltabound::{
    greens_spectrum, transfer_spectrum, BoundStateProblem, DeltaConvention, EnergySpectrum, Preset, PresetKind,
    SolverOptions,
};
use rayon::prelude::*;

use crate::config::{Axis, Method, ProblemSpec, RunConfig, SweepSpec};
use crate::error::CliError;
use crate::output::{Cell, TableRow};

pub const STATUS_OK: &str = "ok";
/// The point has no level in the gap.
pub const STATUS_EMPTY: &str = "empty";
/// Analytic zero-separation value, not a solver result.
pub const STATUS_MARKER: &str = "marker";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub preset: String,
    pub g: Option<f64>,
    pub mr1: Option<f64>,
    pub mr2: Option<f64>,
    pub method: String,
    pub convention: String,
    pub branch: Option<String>,
    pub e_over_m: Option<f64>,
    pub residual: Option<f64>,
    pub status: String,
}

impl TableRow for Row {
    const HEADER: &'static [&'static str] = &[
        "preset",
        "g",
        "mR1",
        "mR2",
        "method",
        "convention",
        "branch",
        "E_over_m",
        "residual",
        "status",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.preset.clone()),
            Cell::Num(self.g),
            Cell::Num(self.mr1),
            Cell::Num(self.mr2),
            Cell::Text(self.method.clone()),
            Cell::Text(self.convention.clone()),
            Cell::Text(self.branch.clone().unwrap_or_default()),
            Cell::Num(self.e_over_m),
            Cell::Num(self.residual),
            Cell::Text(self.status.clone()),
        ]
    }
}

/// Identifying columns shared by every row of one problem.
#[derive(Debug, Clone)]
struct Key {
    preset: String,
    g: Option<f64>,
    mr1: Option<f64>,
    mr2: Option<f64>,
}

impl Key {
    fn of(problem: &ProblemSpec) -> Key {
        match problem {
            ProblemSpec::Preset(p) => Key::of_preset(p),
            ProblemSpec::Centers(_) => Key {
                preset: "custom".into(),
                g: None,
                mr1: None,
                mr2: None,
            },
        }
    }

    fn of_preset(p: &Preset) -> Key {
        let (mr1, mr2) = match p.kind.distance_count() {
            0 => (None, None),
            1 => (Some(p.r1), None),
            _ => (Some(p.r1), Some(p.r2)),
        };
        Key {
            preset: p.kind.label().into(),
            g: Some(p.g),
            mr1,
            mr2,
        }
    }

    fn row(&self, method: &str, convention: &str) -> Row {
        Row {
            preset: self.preset.clone(),
            g: self.g,
            mr1: self.mr1,
            mr2: self.mr2,
            method: method.into(),
            convention: convention.into(),
            branch: None,
            e_over_m: None,
            residual: None,
            status: STATUS_EMPTY.into(),
        }
    }
}

fn spectrum_rows(key: &Key, method: Method, convention: DeltaConvention, s: &EnergySpectrum, m: f64) -> Vec<Row> {
    if s.is_empty() {
        return vec![key.row(method.label(), convention.label())];
    }
    s.roots()
        .iter()
        .map(|r| Row {
            branch: r.branch.map(str::to_string),
            e_over_m: Some(r.energy / m),
            residual: Some(r.residual),
            status: STATUS_OK.into(),
            ..key.row(method.label(), convention.label())
        })
        .collect()
}

/// The Green's-function engine has no convention of its own; its spectra
/// are those of the Cayley connection and are labelled so.
fn method_conventions(method: Method, conventions: &[DeltaConvention]) -> Vec<DeltaConvention> {
    match method {
        Method::Greens => vec![DeltaConvention::CayleySelfAdjoint],
        _ => conventions.to_vec(),
    }
}

fn spectrum(
    problem: &ProblemSpec,
    built: &BoundStateProblem,
    method: Method,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> deltabound::Result<EnergySpectrum> {
    match method {
        Method::Greens => greens_spectrum(built, opts),
        Method::Transfer => transfer_spectrum(built, opts, convention),
        Method::ClosedForm => match problem {
            ProblemSpec::Preset(p) => closedform_spectrum(p, convention, opts),
            ProblemSpec::Centers(_) => unreachable!("closedform on explicit centers is rejected by the config"),
        },
    }
}

/// All rows for one problem. A preset with `g = 0` has no centers left
/// after validation and yields empty rows.
fn solve_problem(
    problem: &ProblemSpec,
    methods: &[Method],
    conventions: &[DeltaConvention],
    opts: &SolverOptions,
) -> Result<Vec<Row>, CliError> {
    let key = Key::of(problem);
    let m = problem.mass().value();
    let built = match problem {
        ProblemSpec::Preset(p) if p.g == 0.0 => None,
        ProblemSpec::Preset(p) => Some(p.problem().map_err(|source| CliError::Solver {
            method: "preset",
            source,
        })?),
        ProblemSpec::Centers(c) => Some(c.clone()),
    };
    let mut rows = Vec::new();
    for &method in methods {
        for conv in method_conventions(method, conventions) {
            match &built {
                None => rows.push(key.row(method.label(), conv.label())),
                Some(b) => {
                    let s = spectrum(problem, b, method, conv, opts).map_err(|source| CliError::Solver {
                        method: method.label(),
                        source,
                    })?;
                    rows.extend(spectrum_rows(&key, method, conv, &s, m));
                }
            }
        }
    }
    Ok(rows)
}

pub fn run_solve(cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
    solve_problem(&cfg.problem, &cfg.methods, &cfg.conventions, &cfg.solver)
}

fn point_preset(base: &Preset, axis: Axis, value: f64) -> deltabound::Result<Preset> {
    match axis {
        Axis::Coupling => base.with_coupling(value),
        Axis::Distance => base.with_distance(value),
    }
}

/// Solves every grid point independently (in parallel) and returns the rows
/// in axis order. A failing point becomes a row whose status carries the
/// error; the sweep goes on.
pub fn run_sweep(cfg: &RunConfig, sweep: &SweepSpec) -> Result<Vec<Row>, CliError> {
    let base = match &cfg.problem {
        ProblemSpec::Preset(p) => *p,
        ProblemSpec::Centers(_) => return Err(CliError::config("sweep", "sweeps need a preset")),
    };
    let points: Vec<Vec<Row>> = sweep
        .values()
        .into_par_iter()
        .map(|value| {
            let preset = match point_preset(&base, sweep.axis, value) {
                Ok(p) => p,
                Err(e) => return vec![error_row(&base, sweep.axis, value, "preset", &e.to_string())],
            };
            let problem = ProblemSpec::Preset(preset);
            let mut rows = Vec::new();
            for &method in &cfg.methods {
                for conv in method_conventions(method, &cfg.conventions) {
                    match solve_problem(&problem, &[method], &[conv], &cfg.solver) {
                        Ok(r) => rows.extend(r),
                        Err(e) => rows.push(Row {
                            status: format!("error: {e}"),
                            ..Key::of_preset(&preset).row(method.label(), conv.label())
                        }),
                    }
                }
            }
            rows
        })
        .collect();
    Ok(points.into_iter().flatten().collect())
}

fn error_row(base: &Preset, axis: Axis, value: f64, method: &str, message: &str) -> Row {
    let mut key = Key::of_preset(base);
    match axis {
        Axis::Coupling => key.g = Some(value),
        Axis::Distance => {
            key.mr1 = key.mr1.map(|_| value);
            key.mr2 = key.mr2.map(|_| value);
        }
    }
    Row {
        status: format!("error: {message}"),
        ..key.row(method, "")
    }
}

/// Net number of attractive centers once all centers coincide.
fn merged_count(kind: PresetKind) -> usize {
    match kind {
        PresetKind::SingleDelta | PresetKind::TripleAlternating => 1,
        PresetKind::DoubleSymmetric => 2,
        PresetKind::Dipole => 0,
        PresetKind::TripleSamePolarity => 3,
    }
}

/// Level of the preset with every distance set to zero: the connection
/// angles simply add.
pub fn merged_energy(preset: &Preset, convention: DeltaConvention) -> Option<f64> {
    match merged_count(preset.kind) {
        0 => None,
        n => merged_limit_energy(n, preset.g, preset.mass, convention).ok().flatten(),
    }
}

/// Marker rows at `mR = 0` for distance sweeps.
pub fn marker_rows(preset: &Preset, conventions: &[DeltaConvention]) -> Vec<Row> {
    let mut key = Key::of_preset(preset);
    key.mr1 = key.mr1.map(|_| 0.0);
    key.mr2 = key.mr2.map(|_| 0.0);
    conventions
        .iter()
        .map(|&conv| {
            let e = merged_energy(preset, conv);
            Row {
                e_over_m: e.map(|e| e / preset.mass.value()),
                status: if e.is_some() { STATUS_MARKER } else { STATUS_EMPTY }.into(),
                ..key.row("merged", conv.label())
            }
        })
        .collect()
}
