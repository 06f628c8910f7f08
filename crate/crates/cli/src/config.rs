//! JSON run configuration.
//!
//! ```json
//! { "preset": "dipole", "g": 1.5, "mR": 1.0, "m": 1.0,
//!   "methods": ["greens", "transfer"], "convention": "squeeze" }
//! ```
//!
//! Either `preset` (with `g` and `mR`, or `mR1`/`mR2` for the triples) or
//! an explicit `centers` list is required.

use deltabound::{BoundStateProblem, DeltaCenter, DeltaConvention, Mass, Preset, PresetKind, SolverOptions};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Greens,
    Transfer,
    ClosedForm,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Greens => "greens",
            Method::Transfer => "transfer",
            Method::ClosedForm => "closedform",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        [Method::Greens, Method::Transfer, Method::ClosedForm]
            .into_iter()
            .find(|m| m.label() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Coupling,
    Distance,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::Coupling => "g",
            Axis::Distance => "mR",
        }
    }
}

/// Linear grid over one preset parameter; the other stays at its
/// configured value. Distance sweeps move every distance of the preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn new(axis: Axis, start: f64, stop: f64, count: usize) -> Result<Self, CliError> {
        if count < 2 {
            return Err(CliError::config(
                "sweep.count",
                format!("need at least 2 points, got {count}"),
            ));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(CliError::config(
                "sweep",
                format!("need start < stop, got {start} and {stop}"),
            ));
        }
        Ok(SweepSpec {
            axis,
            start,
            stop,
            count,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    Preset(Preset),
    Centers(BoundStateProblem),
}

impl ProblemSpec {
    pub fn mass(&self) -> Mass {
        match self {
            ProblemSpec::Preset(p) => p.mass,
            ProblemSpec::Centers(p) => p.mass(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub methods: Vec<Method>,
    pub conventions: Vec<DeltaConvention>,
    pub solver: SolverOptions,
    pub sweep: Option<SweepSpec>,
    pub format: Option<Format>,
    pub output: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCenter {
    position: f64,
    strength: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    grid_points: Option<usize>,
    tol_energy: Option<f64>,
    tol_residual: Option<f64>,
    max_refinements: Option<usize>,
    edge_margin: Option<f64>,
    touching_threshold: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis: String,
    start: f64,
    stop: f64,
    count: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<String>,
    path: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    centers: Option<Vec<RawCenter>>,
    g: Option<f64>,
    #[serde(rename = "mR")]
    m_r: Option<f64>,
    #[serde(rename = "mR1")]
    m_r1: Option<f64>,
    #[serde(rename = "mR2")]
    m_r2: Option<f64>,
    m: Option<f64>,
    methods: Option<Vec<String>>,
    convention: Option<String>,
    #[serde(default)]
    solver: RawSolver,
    sweep: Option<RawSweep>,
    #[serde(default)]
    output: RawOutput,
}

pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::config(
            if path == "." { "config".into() } else { path },
            e.into_inner().to_string(),
        )
    })?;
    build(raw)
}

fn build(raw: RawConfig) -> Result<RunConfig, CliError> {
    let mass = Mass::new(raw.m.unwrap_or(1.0)).map_err(|e| CliError::config("m", e.to_string()))?;

    let problem = match (&raw.preset, &raw.centers) {
        (Some(_), Some(_)) => return Err(CliError::config("preset", "give either preset or centers, not both")),
        (None, None) => return Err(CliError::config("preset", "one of preset or centers is required")),
        (Some(label), None) => ProblemSpec::Preset(build_preset(label, &raw, mass)?),
        (None, Some(centers)) => {
            for key in [("g", raw.g), ("mR", raw.m_r), ("mR1", raw.m_r1), ("mR2", raw.m_r2)] {
                if key.1.is_some() {
                    return Err(CliError::config(key.0, "only meaningful with a preset"));
                }
            }
            let m = mass.value();
            let cs = centers.iter().map(|c| DeltaCenter {
                position: c.position / m,
                strength: c.strength,
            });
            let p = BoundStateProblem::new(mass, cs).map_err(|e| CliError::config("centers", e.to_string()))?;
            ProblemSpec::Centers(p)
        }
    };

    let methods = match &raw.methods {
        None => vec![Method::Greens, Method::Transfer],
        Some(list) => {
            let mut out = Vec::new();
            for (i, s) in list.iter().enumerate() {
                let m = Method::from_label(s)
                    .ok_or_else(|| CliError::config(format!("methods[{i}]"), format!("unknown method {s:?}")))?;
                if !out.contains(&m) {
                    out.push(m);
                }
            }
            out
        }
    };
    if methods.is_empty() {
        return Err(CliError::config("methods", "at least one method is required"));
    }
    if methods.contains(&Method::ClosedForm) && matches!(problem, ProblemSpec::Centers(_)) {
        return Err(CliError::config("methods", "closedform needs a preset"));
    }

    let conventions = match raw.convention.as_deref() {
        None | Some("both") => DeltaConvention::ALL.to_vec(),
        Some(s) => vec![DeltaConvention::from_label(s)
            .ok_or_else(|| CliError::config("convention", format!("expected squeeze, cayley or both, got {s:?}")))?],
    };

    let d = SolverOptions::default();
    let s = &raw.solver;
    let solver = SolverOptions {
        grid_points: s.grid_points.unwrap_or(d.grid_points),
        tol_energy: s.tol_energy.unwrap_or(d.tol_energy),
        tol_residual: s.tol_residual.unwrap_or(d.tol_residual),
        max_refinements: s.max_refinements.unwrap_or(d.max_refinements),
        edge_margin: s.edge_margin.unwrap_or(d.edge_margin),
        touching_threshold: s.touching_threshold.unwrap_or(d.touching_threshold),
    };
    solver
        .validate()
        .map_err(|e| CliError::config("solver", e.to_string()))?;

    let sweep = match &raw.sweep {
        None => None,
        Some(s) => {
            let axis = match s.axis.as_str() {
                "g" => Axis::Coupling,
                "mR" => Axis::Distance,
                other => {
                    return Err(CliError::config(
                        "sweep.axis",
                        format!("expected g or mR, got {other:?}"),
                    ))
                }
            };
            if !matches!(problem, ProblemSpec::Preset(_)) {
                return Err(CliError::config("sweep", "sweeps need a preset"));
            }
            Some(SweepSpec::new(axis, s.start, s.stop, s.count)?)
        }
    };

    let format = match raw.output.format.as_deref() {
        None => None,
        Some(f) => Some(
            Format::from_label(f)
                .ok_or_else(|| CliError::config("output.format", format!("expected csv or json, got {f:?}")))?,
        ),
    };

    Ok(RunConfig {
        problem,
        methods,
        conventions,
        solver,
        sweep,
        format,
        output: raw.output.path.clone(),
    })
}

fn build_preset(label: &str, raw: &RawConfig, mass: Mass) -> Result<Preset, CliError> {
    let kind = PresetKind::from_label(label).ok_or_else(|| {
        let known: Vec<_> = PresetKind::ALL.iter().map(|k| k.label()).collect();
        CliError::config(
            "preset",
            format!("unknown preset {label:?}; expected one of {}", known.join(", ")),
        )
    })?;
    let g = raw.g.ok_or_else(|| CliError::config("g", "required with a preset"))?;
    let (r1, r2) = match kind.distance_count() {
        0 => {
            if raw.m_r.is_some() || raw.m_r1.is_some() || raw.m_r2.is_some() {
                return Err(CliError::config("mR", "the single preset takes no distance"));
            }
            (0.0, 0.0)
        }
        1 => {
            if raw.m_r1.is_some() || raw.m_r2.is_some() {
                return Err(CliError::config("mR1", format!("{label} takes a single mR")));
            }
            let r = raw
                .m_r
                .ok_or_else(|| CliError::config("mR", format!("required for {label}")))?;
            (r, r)
        }
        _ => match (raw.m_r, raw.m_r1, raw.m_r2) {
            (Some(r), None, None) => (r, r),
            (None, Some(a), Some(b)) => (a, b),
            _ => {
                return Err(CliError::config(
                    "mR1",
                    format!("{label} takes mR, or both mR1 and mR2"),
                ))
            }
        },
    };
    Preset::new(kind, g, r1, r2, mass).map_err(|e| {
        let field = match &e {
            deltabound::Error::InvalidParameter { name, .. } => *name,
            _ => "preset",
        };
        CliError::config(field, e.to_string())
    })
}
