//! Scalar functions of the energy inside the mass gap.

use crate::error::{Error, Result};
use crate::model::Mass;

/// `rho = sqrt((m - E)/(m + E))`.
pub fn rho_of(energy: f64, mass: Mass) -> Result<f64> {
    mass.check_in_gap(energy)?;
    let m = mass.value();
    Ok(((m - energy) / (m + energy)).sqrt())
}

/// `kappa = sqrt(m^2 - E^2)`, the exterior decay rate.
pub fn kappa_of(energy: f64, mass: Mass) -> Result<f64> {
    mass.check_in_gap(energy)?;
    let m = mass.value();
    Ok(((m - energy) * (m + energy)).sqrt())
}

/// `X = E/kappa * g/(1 - g^2/4)`, the variable in which the Green's-function
/// equations become polynomial.
pub fn x_variable(energy: f64, mass: Mass, g: f64) -> Result<f64> {
    let kappa = kappa_of(energy, mass)?;
    let denom = 1.0 - 0.25 * g * g;
    if denom == 0.0 {
        return Err(Error::Singularity {
            coupling: g,
            context: "the X variable (1 - g^2/4 = 0)",
        });
    }
    Ok(energy / kappa * g / denom)
}

/// `rho`, `kappa` and `E` at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapVariables {
    pub energy: f64,
    pub rho: f64,
    pub kappa: f64,
}

impl GapVariables {
    pub fn new(energy: f64, mass: Mass) -> Result<Self> {
        mass.check_in_gap(energy)?;
        let m = mass.value();
        Ok(GapVariables {
            energy,
            rho: ((m - energy) / (m + energy)).sqrt(),
            kappa: ((m - energy) * (m + energy)).sqrt(),
        })
    }

    /// `E / kappa`.
    #[inline]
    pub fn energy_ratio(&self) -> f64 {
        self.energy / self.kappa
    }
}

/// Powers of `rho` that appear when transfer-matrix elements are inserted into
/// the bound-state condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoPowers {
    /// `1/rho - rho`
    pub p1: f64,
    /// `1/rho^2 + rho^2`
    pub p2: f64,
    /// `rho^3 - 1/rho^3`
    pub p3: f64,
}

impl RhoPowers {
    /// The same three quantities written through `t = E/kappa`:
    /// `2t`, `2(1 + 2t^2)`, `-2(3t + 4t^3)`.
    pub fn from_energy_ratio(t: f64) -> Self {
        RhoPowers {
            p1: 2.0 * t,
            p2: 2.0 * (1.0 + 2.0 * t * t),
            p3: -2.0 * (3.0 * t + 4.0 * t * t * t),
        }
    }

    /// Largest relative deviation between the direct powers and the `E/kappa` forms.
    pub fn max_relative_deviation(&self, other: &RhoPowers) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        rel(self.p1, other.p1)
            .max(rel(self.p2, other.p2))
            .max(rel(self.p3, other.p3))
    }
}

pub fn rho_power_identities(energy: f64, mass: Mass) -> Result<RhoPowers> {
    let gv = GapVariables::new(energy, mass)?;
    let r = gv.rho;
    let inv = 1.0 / r;
    Ok(RhoPowers {
        p1: inv - r,
        p2: inv * inv + r * r,
        p3: r * r * r - inv * inv * inv,
    })
}

/// Closed search interval `[-m(1 - margin), m(1 - margin)]`.
pub fn search_interval(mass: Mass, edge_margin: f64) -> (f64, f64) {
    let edge = mass.value() * (1.0 - edge_margin);
    (-edge, edge)
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Mass = Mass::UNIT;

    #[test]
    fn rho_examples() {
        assert_eq!(rho_of(0.0, M).unwrap(), 1.0);
        assert!((rho_of(0.6, M).unwrap() - 0.5).abs() < 1e-15);
        assert!((rho_of(-0.6, M).unwrap() - 2.0).abs() < 1e-15);
        assert!(rho_of(1.0, M).is_err());
        assert!(rho_of(-1.5, M).is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_of(0.0, M).unwrap(), 1.0);
        assert!((kappa_of(0.6, M).unwrap() - 0.8).abs() < 1e-15);
        // sqrt(1 - 0.0784) = sqrt(0.9216)
        assert!((kappa_of(0.28, M).unwrap() - 0.96).abs() < 1e-15);
        assert!(kappa_of(-1.0, M).is_err());
    }

    #[test]
    fn x_variable_examples() {
        assert_eq!(x_variable(0.0, M, 1.0).unwrap(), 0.0);
        assert!(matches!(x_variable(0.28, M, 2.0), Err(Error::Singularity { .. })));
        assert!(matches!(x_variable(0.28, M, -2.0), Err(Error::Singularity { .. })));
        assert!((x_variable(0.6, M, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(x_variable(1.0, M, 1.0).is_err());
    }

    #[test]
    fn rho_power_examples() {
        let p = rho_power_identities(0.0, M).unwrap();
        assert_eq!((p.p1, p.p2, p.p3), (0.0, 2.0, 0.0));

        // rho = 1/2: 2 - 1/2, 4 + 1/4, 1/8 - 8
        let p = rho_power_identities(0.6, M).unwrap();
        assert!((p.p1 - 1.5).abs() < 1e-14);
        assert!((p.p2 - 4.25).abs() < 1e-14);
        assert!((p.p3 + 7.875).abs() < 1e-13);

        let q = rho_power_identities(-0.6, M).unwrap();
        assert!((q.p1 + 1.5).abs() < 1e-14);
        assert!((q.p2 - 4.25).abs() < 1e-14);
        assert!((q.p3 - 7.875).abs() < 1e-13);
        assert!(rho_power_identities(1.0, M).is_err());
    }

    #[test]
    fn identities_hold_on_a_grid() {
        for i in 0..1000 {
            let e = -0.999 + 1.998 * (i as f64) / 999.0;
            let gv = GapVariables::new(e, M).unwrap();
            let direct = rho_power_identities(e, M).unwrap();
            let via_ratio = RhoPowers::from_energy_ratio(gv.energy_ratio());
            assert!(direct.max_relative_deviation(&via_ratio) < 1e-12, "E = {e}");
        }
    }

    #[test]
    fn search_interval_scales_with_mass() {
        let (lo, hi) = search_interval(Mass::new(3.0).unwrap(), 1e-9);
        assert_eq!(lo, -hi);
        assert!((3.0 - hi - 3e-9).abs() < 1e-15);
    }
}
