//! Domain types shared by every engine.
//!
//! Strengths follow the potential `V(x) = sum_i g_i delta(x - r_i)` verbatim:
//! a center stored with strength `-1.5` is an attractive well. The presets in
//! [`crate::presets`] translate a user-facing attractive coupling `g > 0` into
//! stored strength `-g`.

use std::fmt;

use crate::error::{Error, Result};

/// Fermion mass, the energy scale of the problem. Positions carry units `1/m`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub const UNIT: Mass = Mass(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Mass(value))
        } else {
            Err(Error::InvalidParameter {
                name: "m",
                value,
                reason: "mass must be positive and finite",
            })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Returns an error unless `energy` lies strictly inside `(-m, m)`.
    pub fn check_in_gap(self, energy: f64) -> Result<()> {
        if energy.is_finite() && energy.abs() < self.0 {
            Ok(())
        } else {
            Err(Error::EnergyOutsideGap { energy, mass: self.0 })
        }
    }
}

impl Default for Mass {
    fn default() -> Self {
        Mass::UNIT
    }
}

/// One point interaction `strength * delta(x - position)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaCenter {
    pub position: f64,
    pub strength: f64,
}

impl DeltaCenter {
    pub fn new(position: f64, strength: f64) -> Result<Self> {
        if !position.is_finite() {
            return Err(Error::InvalidParameter {
                name: "position",
                value: position,
                reason: "must be finite",
            });
        }
        if !strength.is_finite() {
            return Err(Error::InvalidParameter {
                name: "strength",
                value: strength,
                reason: "must be finite",
            });
        }
        Ok(DeltaCenter { position, strength })
    }
}

/// A mass and an ordered list of delta centers.
///
/// Construction drops zero-strength centers and requires the remaining
/// positions to be strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundStateProblem {
    mass: Mass,
    centers: Vec<DeltaCenter>,
}

impl BoundStateProblem {
    pub fn new(mass: Mass, centers: impl IntoIterator<Item = DeltaCenter>) -> Result<Self> {
        let mut kept = Vec::new();
        for center in centers {
            let center = DeltaCenter::new(center.position, center.strength)?;
            if center.strength != 0.0 {
                kept.push(center);
            }
        }
        if kept.is_empty() {
            return Err(Error::InvalidProblem(
                "at least one center with non-zero strength is required".into(),
            ));
        }
        for pair in kept.windows(2) {
            if pair[1].position <= pair[0].position {
                return Err(Error::InvalidProblem(format!(
                    "center positions must be strictly increasing, got {} after {}",
                    pair[1].position, pair[0].position
                )));
            }
        }
        Ok(BoundStateProblem { mass, centers: kept })
    }

    #[inline]
    pub fn mass(&self) -> Mass {
        self.mass
    }

    #[inline]
    pub fn centers(&self) -> &[DeltaCenter] {
        &self.centers
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    /// Always false for a validated problem; provided for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Distances between neighbouring centers, left to right.
    pub fn gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.centers.windows(2).map(|pair| pair[1].position - pair[0].position)
    }
}

/// How a single delta center is turned into a connection matrix.
///
/// Both members are rotations `[[cos t, -sin t], [sin t, cos t]]`; they differ
/// only in the angle assigned to an attractive coupling `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaConvention {
    /// Zero-width limit of a rectangular well of fixed area: `t = g`.
    SqueezedRectangle,
    /// `t = 2 atan(g/2)`; reproduces the Green's-function spectra.
    CayleySelfAdjoint,
}

impl DeltaConvention {
    pub const ALL: [DeltaConvention; 2] = [DeltaConvention::CayleySelfAdjoint, DeltaConvention::SqueezedRectangle];

    /// Rotation angle for the attractive coupling `g` (potential `-g delta`).
    #[inline]
    pub fn theta(self, g: f64) -> f64 {
        match self {
            DeltaConvention::SqueezedRectangle => g,
            DeltaConvention::CayleySelfAdjoint => 2.0 * (0.5 * g).atan(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DeltaConvention::SqueezedRectangle => "squeeze",
            DeltaConvention::CayleySelfAdjoint => "cayley",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "squeeze" | "squeezed" | "squeezed_rectangle" => Some(DeltaConvention::SqueezedRectangle),
            "cayley" | "cayley_self_adjoint" => Some(DeltaConvention::CayleySelfAdjoint),
            _ => None,
        }
    }
}

impl fmt::Display for DeltaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    /// Sign change of the residual.
    Simple,
    /// Even-multiplicity zero found as a minimum of `|f|`.
    Touching,
}

/// One bound-state energy with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRoot {
    pub energy: f64,
    /// `|f(E)|` relative to the residual scale of the scan that produced the root.
    pub residual: f64,
    pub multiplicity: Multiplicity,
    pub method: &'static str,
    /// Branch label for closed forms that split into sub-equations, e.g. `plus`.
    pub branch: Option<&'static str>,
}

/// Bound-state energies in `(-m, m)`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergySpectrum {
    roots: Vec<SpectralRoot>,
}

impl EnergySpectrum {
    /// Sorts by energy and merges roots closer than `min_separation`, keeping
    /// the one with the smaller residual.
    pub fn from_roots(mut roots: Vec<SpectralRoot>, min_separation: f64) -> Self {
        roots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        let mut merged: Vec<SpectralRoot> = Vec::with_capacity(roots.len());
        for root in roots {
            match merged.last_mut() {
                Some(last) if root.energy - last.energy <= min_separation => {
                    if root.residual < last.residual {
                        *last = root;
                    }
                }
                _ => merged.push(root),
            }
        }
        EnergySpectrum { roots: merged }
    }

    pub fn roots(&self) -> &[SpectralRoot] {
        &self.roots
    }

    pub fn energies(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn into_roots(self) -> Vec<SpectralRoot> {
        self.roots
    }
}
