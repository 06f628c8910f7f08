//! Limit laws checked against the transfer-matrix spectra of a preset.

use deltabound::closedform::single_energy;
use deltabound::{transfer_spectrum, DeltaConvention, Preset, PresetKind, SolverOptions};

use crate::config::{ProblemSpec, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, TableRow};
use crate::run::merged_energy;

pub const MERGED_DISTANCE: f64 = 1e-6;
pub const FAR_DISTANCE: f64 = 20.0;
pub const MERGED_TOLERANCE: f64 = 1e-5;
pub const FAR_TOLERANCE: f64 = 1e-8;
pub const DECOUPLED_DISTANCES: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
pub const DECOUPLED_TOLERANCE: f64 = 1e-10;
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Fail,
    /// The law is known not to hold under this convention and indeed fails.
    ExpectedFail,
}

impl AuditStatus {
    pub fn label(self) -> &'static str {
        match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "fail",
            AuditStatus::ExpectedFail => "expected_fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub check: &'static str,
    pub preset: &'static str,
    pub convention: &'static str,
    pub g: f64,
    pub m_r: f64,
    pub expected: Option<f64>,
    pub measured: Option<f64>,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub status: AuditStatus,
}

impl TableRow for AuditRow {
    const HEADER: &'static [&'static str] = &[
        "check",
        "preset",
        "convention",
        "g",
        "mR",
        "expected_E_over_m",
        "measured_E_over_m",
        "deviation",
        "tolerance",
        "status",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.check.into()),
            Cell::Text(self.preset.into()),
            Cell::Text(self.convention.into()),
            Cell::Num(Some(self.g)),
            Cell::Num(Some(self.m_r)),
            Cell::Num(self.expected),
            Cell::Num(self.measured),
            Cell::Num(self.deviation),
            Cell::Num(Some(self.tolerance)),
            Cell::Text(self.status.label().into()),
        ]
    }
}

struct Ctx<'a> {
    preset: Preset,
    convention: DeltaConvention,
    opts: &'a SolverOptions,
}

impl Ctx<'_> {
    fn levels(&self, preset: &Preset) -> Result<Vec<f64>, CliError> {
        let p = preset.problem().map_err(|source| CliError::Solver {
            method: "preset",
            source,
        })?;
        let s = transfer_spectrum(&p, self.opts, self.convention).map_err(|source| CliError::Solver {
            method: "transfer",
            source,
        })?;
        let m = preset.mass.value();
        Ok(s.energies().into_iter().map(|e| e / m).collect())
    }

    fn at(&self, r: f64) -> Result<Preset, CliError> {
        self.preset.with_distance(r).map_err(|source| CliError::Solver {
            method: "preset",
            source,
        })
    }

    fn single(&self, g: f64) -> Option<f64> {
        single_energy(g, self.preset.mass, self.convention).map(|e| e / self.preset.mass.value())
    }

    fn row(&self, check: &'static str, m_r: f64, tolerance: f64) -> AuditRow {
        AuditRow {
            check,
            preset: self.preset.kind.label(),
            convention: self.convention.label(),
            g: self.preset.g,
            m_r,
            expected: None,
            measured: None,
            deviation: None,
            tolerance,
            status: AuditStatus::Fail,
        }
    }

    /// Closest level to `expected`, graded against `tolerance`.
    fn compare(
        &self,
        check: &'static str,
        m_r: f64,
        levels: &[f64],
        expected: Option<f64>,
        tolerance: f64,
    ) -> AuditRow {
        let mut row = self.row(check, m_r, tolerance);
        row.expected = expected;
        match expected {
            None => {
                row.measured = levels.first().copied();
                row.status = if levels.is_empty() {
                    AuditStatus::Pass
                } else {
                    AuditStatus::Fail
                };
            }
            Some(want) => {
                let best = levels
                    .iter()
                    .copied()
                    .min_by(|a, b| (a - want).abs().total_cmp(&(b - want).abs()));
                row.measured = best;
                row.deviation = best.map(|e| (e - want).abs());
                row.status = match row.deviation {
                    Some(d) if d < tolerance => AuditStatus::Pass,
                    _ => AuditStatus::Fail,
                };
            }
        }
        row
    }

    fn merged(&self, out: &mut Vec<AuditRow>) -> Result<(), CliError> {
        let kind = self.preset.kind;
        let levels = self.levels(&self.at(MERGED_DISTANCE)?)?;
        if kind == PresetKind::Dipole {
            out.push(self.compare("annihilation", MERGED_DISTANCE, &levels, None, MERGED_TOLERANCE));
            return Ok(());
        }
        let n = if kind == PresetKind::TripleAlternating {
            1.0
        } else {
            kind.center_count() as f64
        };
        let additive = self.single(n * self.preset.g);
        let mut row = self.compare("additivity", MERGED_DISTANCE, &levels, additive, MERGED_TOLERANCE);
        if self.convention == DeltaConvention::CayleySelfAdjoint && row.status == AuditStatus::Fail {
            row.status = AuditStatus::ExpectedFail;
        }
        out.push(row);
        if self.convention == DeltaConvention::CayleySelfAdjoint {
            let merged = merged_energy(&self.preset, self.convention).map(|e| e / self.preset.mass.value());
            out.push(self.compare("merged_limit", MERGED_DISTANCE, &levels, merged, MERGED_TOLERANCE));
        }
        Ok(())
    }

    /// Every level sits at the level of the nearest isolated center; the
    /// repulsive ones contribute the mirrored energy.
    fn far(&self, out: &mut Vec<AuditRow>) -> Result<(), CliError> {
        let levels = self.levels(&self.at(FAR_DISTANCE)?)?;
        let attractive = self.single(self.preset.g);
        let repulsive = match self.preset.kind {
            PresetKind::Dipole | PresetKind::TripleAlternating => attractive.map(|e| -e),
            _ => None,
        };
        let targets: Vec<f64> = attractive.into_iter().chain(repulsive).collect();
        if levels.is_empty() {
            let mut row = self.row("far_separation", FAR_DISTANCE, FAR_TOLERANCE);
            row.expected = targets.first().copied();
            row.status = if targets.is_empty() {
                AuditStatus::Pass
            } else {
                AuditStatus::Fail
            };
            out.push(row);
        }
        for &e in &levels {
            let expected = targets
                .iter()
                .copied()
                .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()));
            out.push(self.compare("far_separation", FAR_DISTANCE, &[e], expected, FAR_TOLERANCE));
        }
        Ok(())
    }

    fn decoupled(&self, out: &mut Vec<AuditRow>) -> Result<(), CliError> {
        let expected = self.single(self.preset.g);
        for r in DECOUPLED_DISTANCES {
            let levels = self.levels(&self.at(r)?)?;
            out.push(self.compare("decoupled_level", r, &levels, expected, DECOUPLED_TOLERANCE));
        }
        Ok(())
    }

    fn symmetry(&self, out: &mut Vec<AuditRow>) -> Result<(), CliError> {
        let levels = self.levels(&self.preset)?;
        let mut row = self.row("dipole_symmetry", self.preset.r1, SYMMETRY_TOLERANCE);
        let d = levels
            .iter()
            .zip(levels.iter().rev())
            .map(|(a, b)| (a + b).abs())
            .fold(0.0, f64::max);
        row.expected = Some(0.0);
        row.measured = Some(levels.iter().sum());
        row.deviation = Some(d);
        row.status = if d < SYMMETRY_TOLERANCE {
            AuditStatus::Pass
        } else {
            AuditStatus::Fail
        };
        out.push(row);
        Ok(())
    }

    fn single_center(&self, out: &mut Vec<AuditRow>) -> Result<(), CliError> {
        let levels = self.levels(&self.preset)?;
        out.push(self.compare(
            "single_center",
            0.0,
            &levels,
            self.single(self.preset.g),
            DECOUPLED_TOLERANCE,
        ));
        Ok(())
    }
}

pub fn run_audit(cfg: &RunConfig) -> Result<Vec<AuditRow>, CliError> {
    let preset = match &cfg.problem {
        ProblemSpec::Preset(p) => *p,
        ProblemSpec::Centers(_) => return Err(CliError::config("preset", "audits need a preset")),
    };
    let mut out = Vec::new();
    for &convention in &cfg.conventions {
        let ctx = Ctx {
            preset,
            convention,
            opts: &cfg.solver,
        };
        match preset.kind {
            PresetKind::SingleDelta => ctx.single_center(&mut out)?,
            kind => {
                ctx.merged(&mut out)?;
                ctx.far(&mut out)?;
                if kind == PresetKind::Dipole {
                    ctx.symmetry(&mut out)?;
                }
                if kind == PresetKind::TripleAlternating {
                    ctx.decoupled(&mut out)?;
                }
            }
        }
    }
    Ok(out)
}

pub fn has_failures(rows: &[AuditRow]) -> bool {
    rows.iter().any(|r| r.status == AuditStatus::Fail)
}
