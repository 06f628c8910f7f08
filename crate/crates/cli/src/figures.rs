//! Built-in sweeps behind the four figures. Panel `a` varies `g` over
//! `[0, pi]` at `mR = 1`; panel `b` varies `mR` over `(0, 5]` at `g = 1.5`,
//! starting from `1e-6` with the coincident-center values as marker rows.

use deltabound::{DeltaConvention, Mass, Preset, PresetKind, SolverOptions};

use crate::config::{Axis, Method, ProblemSpec, RunConfig, SweepSpec};
use crate::error::CliError;
use crate::run::{marker_rows, run_sweep, Row};

pub const PANEL_A_DISTANCE: f64 = 1.0;
pub const PANEL_A_POINTS: usize = 629;
pub const PANEL_B_COUPLING: f64 = 1.5;
pub const PANEL_B_POINTS: usize = 500;
pub const PANEL_B_START: f64 = 1e-6;
pub const PANEL_B_STOP: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Figure {
    pub kind: PresetKind,
    pub panel: Panel,
}

pub const FIGURE_NAMES: [&str; 8] = [
    "figure1a", "figure1b", "figure2a", "figure2b", "figure3a", "figure3b", "figure4a", "figure4b",
];

impl Figure {
    pub fn from_name(name: &str) -> Option<Figure> {
        let rest = name.strip_prefix("figure")?;
        let mut chars = rest.chars();
        let kind = match chars.next()? {
            '1' => PresetKind::DoubleSymmetric,
            '2' => PresetKind::Dipole,
            '3' => PresetKind::TripleSamePolarity,
            '4' => PresetKind::TripleAlternating,
            _ => return None,
        };
        let panel = match chars.next()? {
            'a' => Panel::A,
            'b' => Panel::B,
            _ => return None,
        };
        if chars.next().is_some() {
            return None;
        }
        Some(Figure { kind, panel })
    }

    pub fn sweep(&self) -> SweepSpec {
        match self.panel {
            Panel::A => SweepSpec {
                axis: Axis::Coupling,
                start: 0.0,
                stop: std::f64::consts::PI,
                count: PANEL_A_POINTS,
            },
            Panel::B => SweepSpec {
                axis: Axis::Distance,
                start: PANEL_B_START,
                stop: PANEL_B_STOP,
                count: PANEL_B_POINTS,
            },
        }
    }

    pub fn base_preset(&self, mass: Mass) -> Preset {
        let (g, r) = match self.panel {
            Panel::A => (PANEL_B_COUPLING, PANEL_A_DISTANCE),
            Panel::B => (PANEL_B_COUPLING, PANEL_B_STOP),
        };
        Preset::new(self.kind, g, r, r, mass).expect("figure parameters are valid")
    }

    /// Transfer-matrix levels under both conventions, with marker rows
    /// first for the distance panels.
    pub fn rows(&self, solver: &SolverOptions, mass: Mass) -> Result<Vec<Row>, CliError> {
        let preset = self.base_preset(mass);
        let conventions = DeltaConvention::ALL.to_vec();
        let cfg = RunConfig {
            problem: ProblemSpec::Preset(preset),
            methods: vec![Method::Transfer],
            conventions: conventions.clone(),
            solver: solver.clone(),
            sweep: Some(self.sweep()),
            format: None,
            output: None,
        };
        let mut rows = Vec::new();
        if self.panel == Panel::B {
            rows.extend(marker_rows(&preset, &conventions));
        }
        rows.extend(run_sweep(&cfg, &self.sweep())?);
        Ok(rows)
    }
}
