//! The five center arrangements with closed-form spectra.
//!
//! `g > 0` is the attractive coupling; centers are stored with strength `-g`
//! (or `+g` for the opposite-polarity members). Distances are half-widths:
//! the double and dipole centers sit at `-R, +R`, the triples at
//! `-R1, 0, +R2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{BoundStateProblem, DeltaCenter, Mass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetKind {
    SingleDelta,
    DoubleSymmetric,
    Dipole,
    TripleSamePolarity,
    TripleAlternating,
}

impl PresetKind {
    pub const ALL: [PresetKind; 5] = [
        PresetKind::SingleDelta,
        PresetKind::DoubleSymmetric,
        PresetKind::Dipole,
        PresetKind::TripleSamePolarity,
        PresetKind::TripleAlternating,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PresetKind::SingleDelta => "single",
            PresetKind::DoubleSymmetric => "double",
            PresetKind::Dipole => "dipole",
            PresetKind::TripleSamePolarity => "triple_same",
            PresetKind::TripleAlternating => "triple_alt",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        PresetKind::ALL.into_iter().find(|k| k.label() == label)
    }

    pub fn center_count(self) -> usize {
        match self {
            PresetKind::SingleDelta => 1,
            PresetKind::DoubleSymmetric | PresetKind::Dipole => 2,
            PresetKind::TripleSamePolarity | PresetKind::TripleAlternating => 3,
        }
    }

    /// Triples take two distances, the pairs one, the single none.
    pub fn distance_count(self) -> usize {
        self.center_count() - 1
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A preset with its parameters. For the pairs only `r1` is used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub kind: PresetKind,
    pub g: f64,
    pub r1: f64,
    pub r2: f64,
    pub mass: Mass,
}

impl Preset {
    pub fn new(kind: PresetKind, g: f64, r1: f64, r2: f64, mass: Mass) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g,
                reason: "coupling must be finite",
            });
        }
        let distances: &[(&'static str, f64)] = match kind.distance_count() {
            0 => &[],
            1 => &[("mR", r1)],
            _ => &[("mR1", r1), ("mR2", r2)],
        };
        for &(name, value) in distances {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "distances must be positive and finite",
                });
            }
        }
        Ok(Preset { kind, g, r1, r2, mass })
    }

    pub fn single(g: f64, mass: Mass) -> Result<Self> {
        Preset::new(PresetKind::SingleDelta, g, 0.0, 0.0, mass)
    }

    pub fn double(g: f64, r: f64, mass: Mass) -> Result<Self> {
        Preset::new(PresetKind::DoubleSymmetric, g, r, r, mass)
    }

    pub fn dipole(g: f64, r: f64, mass: Mass) -> Result<Self> {
        Preset::new(PresetKind::Dipole, g, r, r, mass)
    }

    pub fn triple_same(g: f64, r1: f64, r2: f64, mass: Mass) -> Result<Self> {
        Preset::new(PresetKind::TripleSamePolarity, g, r1, r2, mass)
    }

    pub fn triple_alt(g: f64, r1: f64, r2: f64, mass: Mass) -> Result<Self> {
        Preset::new(PresetKind::TripleAlternating, g, r1, r2, mass)
    }

    /// Same kind and parameters, with every distance set to `r`.
    pub fn with_distance(&self, r: f64) -> Result<Self> {
        Preset::new(self.kind, self.g, r, r, self.mass)
    }

    pub fn with_coupling(&self, g: f64) -> Result<Self> {
        Preset::new(self.kind, g, self.r1, self.r2, self.mass)
    }

    /// Positions are given in units of `1/m`.
    pub fn centers(&self) -> Vec<DeltaCenter> {
        let g = self.g;
        let m = self.mass.value();
        let (r1, r2) = (self.r1 / m, self.r2 / m);
        let c = |position: f64, strength: f64| DeltaCenter { position, strength };
        match self.kind {
            PresetKind::SingleDelta => vec![c(0.0, -g)],
            PresetKind::DoubleSymmetric => vec![c(-r1, -g), c(r1, -g)],
            PresetKind::Dipole => vec![c(-r1, -g), c(r1, g)],
            PresetKind::TripleSamePolarity => vec![c(-r1, -g), c(0.0, -g), c(r2, -g)],
            PresetKind::TripleAlternating => vec![c(-r1, -g), c(0.0, g), c(r2, -g)],
        }
    }

    pub fn problem(&self) -> Result<BoundStateProblem> {
        BoundStateProblem::new(self.mass, self.centers())
    }
}
