//! Transfer-matrix engine.
//!
//! The spinor `(psi1, psi2)` satisfies `psi1' = (m - E + V) psi2` and
//! `psi2' = (m + E - V) psi1`. A 2x2 matrix carries the boundary values from
//! the left of a region to its right. Chaining connection matrices for the
//! centers with free propagators for the gaps gives the total matrix
//! `Lambda`; a bound state exists where the decaying exterior solutions
//! match, i.e. where
//!
//! ```text
//! lambda12 / rho^2 + (lambda11 + lambda22) / rho + lambda21 = 0
//! ```

use crate::error::{Error, Result};
use crate::gap::GapVariables;
use crate::matrix::Matrix2;
use crate::model::{BoundStateProblem, DeltaConvention, EnergySpectrum, Mass, Multiplicity, SpectralRoot};
use crate::rootfind::{self, RootCountHint, SolverOptions};

pub const METHOD: &str = "transfer";

/// Connection matrix of one attractive center of coupling `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionMatrix {
    pub matrix: Matrix2,
    pub convention: DeltaConvention,
    pub theta: f64,
}

pub fn delta_connection(g: f64, convention: DeltaConvention) -> ConnectionMatrix {
    let theta = convention.theta(g);
    ConnectionMatrix {
        matrix: Matrix2::rotation(theta),
        convention,
        theta,
    }
}

/// `1/(1 + g^2/4) [[1 - g^2/4, -g], [g, 1 - g^2/4]]`, the rational form of
/// the Cayley rotation.
pub fn cayley_connection_matrix(g: f64) -> Matrix2 {
    let q = 0.25 * g * g;
    Matrix2::new(1.0 - q, -g, g, 1.0 - q).scale(1.0 / (1.0 + q))
}

/// Real, unit-determinant connection (the `chi = 0` member of the
/// self-adjoint family).
pub fn is_valid_connection(m: &Matrix2) -> bool {
    m.is_finite() && (m.det() - 1.0).abs() <= 1e-12
}

/// `[[cosh w, rho sinh w], [sinh w / rho, cosh w]]`, `w = L kappa`.
pub fn free_gap_matrix(length: f64, energy: f64, mass: Mass) -> Result<Matrix2> {
    check_length(length)?;
    let gv = GapVariables::new(energy, mass)?;
    let w = length * gv.kappa;
    let (c, s) = (w.cosh(), w.sinh());
    Ok(Matrix2::new(c, gv.rho * s, s / gv.rho, c))
}

fn check_length(length: f64) -> Result<()> {
    if length.is_finite() && length >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "length",
            value: length,
            reason: "gap length must be finite and non-negative",
        })
    }
}

/// A matrix stored as `matrix * exp(log_scale)` with `max |matrix| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTransfer {
    pub matrix: Matrix2,
    pub log_scale: f64,
}

impl ScaledTransfer {
    pub const IDENTITY: ScaledTransfer = ScaledTransfer {
        matrix: Matrix2::IDENTITY,
        log_scale: 0.0,
    };

    pub fn from_matrix(m: Matrix2) -> Self {
        ScaledTransfer {
            matrix: m,
            log_scale: 0.0,
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        let k = self.matrix.max_abs();
        if k > 0.0 && k.is_finite() {
            ScaledTransfer {
                matrix: self.matrix.scale(1.0 / k),
                log_scale: self.log_scale + k.ln(),
            }
        } else {
            self
        }
    }

    /// `factor * self`, renormalised.
    pub fn then(self, factor: ScaledTransfer) -> Self {
        ScaledTransfer {
            matrix: factor.matrix * self.matrix,
            log_scale: self.log_scale + factor.log_scale,
        }
        .normalized()
    }

    /// The unscaled matrix; overflows for very long chains.
    pub fn unscaled(&self) -> Matrix2 {
        self.matrix.scale(self.log_scale.exp())
    }

    /// `det(matrix) * exp(2 log_scale)` without forming the unscaled matrix.
    pub fn unscaled_det(&self) -> f64 {
        self.matrix.det() * (2.0 * self.log_scale).exp()
    }
}

/// Free propagator over `length` in scaled form; exact for any `w`.
pub fn scaled_gap(length: f64, gv: &GapVariables) -> ScaledTransfer {
    let w = length * gv.kappa;
    // cosh w = e^w (1 + q)/2, sinh w = e^w (1 - q)/2, q = e^{-2w}
    let one_plus = 1.0 + (-2.0 * w).exp();
    let one_minus = -(-2.0 * w).exp_m1();
    ScaledTransfer {
        matrix: Matrix2::new(one_plus, gv.rho * one_minus, one_minus / gv.rho, one_plus),
        log_scale: w - std::f64::consts::LN_2,
    }
    .normalized()
}

/// Product over the chain, leftmost center applied first. `theta_of` maps
/// the attractive coupling `-strength` to a rotation angle.
pub fn total_transfer_with<F: Fn(f64) -> f64>(
    problem: &BoundStateProblem,
    energy: f64,
    theta_of: F,
) -> Result<ScaledTransfer> {
    let gv = GapVariables::new(energy, problem.mass())?;
    Ok(chain(problem, &gv, &theta_of))
}

fn chain<F: Fn(f64) -> f64>(problem: &BoundStateProblem, gv: &GapVariables, theta_of: &F) -> ScaledTransfer {
    let mut total = ScaledTransfer::IDENTITY;
    let mut prev: Option<f64> = None;
    for c in problem.centers() {
        if let Some(p) = prev {
            total = total.then(scaled_gap(c.position - p, gv));
        }
        total = total.then(ScaledTransfer::from_matrix(Matrix2::rotation(theta_of(-c.strength))));
        prev = Some(c.position);
    }
    total
}

pub fn total_transfer(problem: &BoundStateProblem, energy: f64, convention: DeltaConvention) -> Result<ScaledTransfer> {
    total_transfer_with(problem, energy, |g| convention.theta(g))
}

fn residual_of(t: &ScaledTransfer, rho: f64) -> f64 {
    let l = &t.matrix;
    let inv = 1.0 / rho;
    l.a12 * inv * inv + (l.a11 + l.a22) * inv + l.a21
}

/// Matching condition on the scaled total matrix. Multiply by
/// `exp(log_scale)` of [`total_transfer`] for the unscaled value.
pub fn bound_state_residual(problem: &BoundStateProblem, energy: f64, convention: DeltaConvention) -> Result<f64> {
    let t = total_transfer(problem, energy, convention)?;
    let rho = crate::gap::rho_of(energy, problem.mass())?;
    Ok(residual_of(&t, rho))
}

fn signed_angle(v: [f64; 2], w: [f64; 2]) -> f64 {
    (v[0] * w[1] - v[1] * w[0]).atan2(v[0] * w[0] + v[1] * w[1])
}

fn unit(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

/// Pruefer-type phase of the left-decaying solution carried through the
/// chain and measured against the right-decaying direction. It increases
/// strictly with `E` and is a multiple of pi exactly at bound states.
fn phase<F: Fn(f64) -> f64>(problem: &BoundStateProblem, gv: &GapVariables, theta_of: &F) -> f64 {
    let edge = (1.0 / gv.rho).atan();
    let mut v = unit([1.0, 1.0 / gv.rho]);
    let mut angle = edge;
    let mut prev: Option<f64> = None;
    for c in problem.centers() {
        if let Some(p) = prev {
            let w = unit(scaled_gap(c.position - p, gv).matrix.apply(v));
            angle += signed_angle(v, w);
            v = w;
        }
        let t = theta_of(-c.strength);
        angle += t;
        v = Matrix2::rotation(t).apply(v);
        prev = Some(c.position);
    }
    angle + edge
}

pub fn transfer_phase(problem: &BoundStateProblem, energy: f64, convention: DeltaConvention) -> Result<f64> {
    let gv = GapVariables::new(energy, problem.mass())?;
    Ok(phase(problem, &gv, &|g| convention.theta(g)))
}

fn median_abs(values: impl Iterator<Item = f64>) -> f64 {
    let mut mags: Vec<f64> = values.map(f64::abs).filter(|v| v.is_finite() && *v > 0.0).collect();
    if mags.is_empty() {
        return 1.0;
    }
    mags.sort_by(f64::total_cmp);
    mags[mags.len() / 2]
}

/// Bound states for an arbitrary angle map.
pub fn transfer_spectrum_with<F: Fn(f64) -> f64>(
    problem: &BoundStateProblem,
    opts: &SolverOptions,
    theta_of: F,
) -> Result<EnergySpectrum> {
    opts.validate()?;
    let mass = problem.mass();
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let phi = |e: f64| match GapVariables::new(e, mass) {
        Ok(gv) => phase(problem, &gv, &theta_of),
        Err(_) => f64::NAN,
    };
    let energies = rootfind::solve_level_crossings(phi, interval, std::f64::consts::PI, &scaled)?;
    let residual = |e: f64| match GapVariables::new(e, mass) {
        Ok(gv) => residual_of(&chain(problem, &gv, &theta_of), gv.rho),
        Err(_) => f64::NAN,
    };
    let (lo, hi) = interval;
    let n = opts.grid_points.max(2);
    let scale = median_abs((0..n).map(|i| residual(lo + (hi - lo) * i as f64 / (n - 1) as f64)));
    let roots = energies
        .into_iter()
        .map(|e| SpectralRoot {
            energy: e,
            residual: residual(e).abs() / scale,
            multiplicity: Multiplicity::Simple,
            method: METHOD,
            branch: None,
        })
        .collect();
    Ok(EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy))
}

pub fn transfer_spectrum(
    problem: &BoundStateProblem,
    opts: &SolverOptions,
    convention: DeltaConvention,
) -> Result<EnergySpectrum> {
    transfer_spectrum_with(problem, opts, |g| convention.theta(g))
}

/// A square barrier or well of height `height` (energy units) and width
/// `width` (units 1/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularSegment {
    pub height: f64,
    pub width: f64,
}

impl RectangularSegment {
    /// `gamma^2 = (V - E)^2 - m^2`; positive inside the oscillatory branch.
    pub fn gamma_squared(&self, energy: f64, mass: Mass) -> f64 {
        let m = mass.value();
        (self.height - energy).powi(2) - m * m
    }
}

/// Exact propagator across a constant-potential segment, in real arithmetic.
pub fn segment_matrix(seg: &RectangularSegment, energy: f64, mass: Mass) -> Result<Matrix2> {
    check_length(seg.width)?;
    if !seg.height.is_finite() {
        return Err(Error::InvalidParameter {
            name: "height",
            value: seg.height,
            reason: "segment potential must be finite",
        });
    }
    let m = mass.value();
    let a = m - energy + seg.height;
    let b = m + energy - seg.height;
    let p = a * b;
    let l = seg.width;
    let (c, s) = if p < 0.0 {
        let k = (-p).sqrt();
        ((k * l).cos(), (k * l).sin() / k)
    } else if p > 0.0 {
        let q = p.sqrt();
        ((q * l).cosh(), (q * l).sinh() / q)
    } else {
        (1.0, l)
    };
    Ok(Matrix2::new(c, a * s, b * s, c))
}

/// Total matrix with every center replaced by a rectangle of the same area
/// and width `width`, centred on the original position.
pub fn rectangular_transfer(problem: &BoundStateProblem, energy: f64, width: f64) -> Result<ScaledTransfer> {
    check_rectangles(problem, width)?;
    let gv = GapVariables::new(energy, problem.mass())?;
    rectangular_chain(problem, &gv, width)
}

fn check_rectangles(problem: &BoundStateProblem, width: f64) -> Result<()> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidParameter {
            name: "width",
            value: width,
            reason: "rectangle width must be positive",
        });
    }
    if problem.gaps().any(|d| d <= width) {
        return Err(Error::InvalidProblem(format!(
            "rectangles of width {width} overlap neighbouring centers"
        )));
    }
    Ok(())
}

fn rectangular_chain(problem: &BoundStateProblem, gv: &GapVariables, width: f64) -> Result<ScaledTransfer> {
    let mut total = ScaledTransfer::IDENTITY;
    let mut prev: Option<f64> = None;
    for c in problem.centers() {
        if let Some(p) = prev {
            total = total.then(scaled_gap(c.position - p - width, gv));
        }
        let seg = RectangularSegment {
            height: c.strength / width,
            width,
        };
        total = total.then(ScaledTransfer::from_matrix(segment_matrix(
            &seg,
            gv.energy,
            problem.mass(),
        )?));
        prev = Some(c.position);
    }
    Ok(total)
}

pub fn rectangular_residual(problem: &BoundStateProblem, energy: f64, width: f64) -> Result<f64> {
    let t = rectangular_transfer(problem, energy, width)?;
    let rho = crate::gap::rho_of(energy, problem.mass())?;
    Ok(residual_of(&t, rho))
}

/// Bound states of the rectangular approximation by a residual scan.
pub fn rectangular_spectrum(problem: &BoundStateProblem, opts: &SolverOptions, width: f64) -> Result<EnergySpectrum> {
    check_rectangles(problem, width)?;
    let mass = problem.mass();
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let f = |e: f64| match GapVariables::new(e, mass) {
        Ok(gv) => rectangular_chain(problem, &gv, width)
            .map(|t| residual_of(&t, gv.rho))
            .unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    };
    let found = rootfind::solve_all_with_hint(f, interval, &scaled, RootCountHint::default())?;
    let roots = found
        .into_iter()
        .map(|r| SpectralRoot {
            energy: r.energy,
            residual: r.residual,
            multiplicity: r.multiplicity,
            method: "rectangles",
            branch: None,
        })
        .collect();
    Ok(EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy))
}
