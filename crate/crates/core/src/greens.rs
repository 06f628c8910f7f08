//! Green's-function engine.
//!
//! The Lippmann-Schwinger equation with `N` point interactions reduces to a
//! homogeneous linear system on the `2N` spinor components at the centers.
//! Its matrix is
//!
//! ```text
//! Delta(i, j) = delta_ij / g_j * I + G0(r_i - r_j, E)
//! ```
//!
//! and the bound states are the zeros of `det Delta(E)` inside the gap.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::Result;
use crate::gap::GapVariables;
use crate::matrix::Matrix2;
use crate::model::{BoundStateProblem, EnergySpectrum, Mass, Multiplicity, SpectralRoot};
use crate::rootfind::{self, RootCountHint, SolverOptions};

pub const METHOD: &str = "greens";

fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Free Dirac Green's function in the Majorana representation,
/// `1/2 [[(E-m)/k, -s], [s, (E+m)/k]] exp(-|dx| k)` with `s = sign(dx)` and
/// `sign(0) = 0`.
pub fn free_greens(dx: f64, energy: f64, mass: Mass) -> Result<Matrix2> {
    let gv = GapVariables::new(energy, mass)?;
    Ok(free_greens_at(dx, &gv, mass))
}

fn free_greens_at(dx: f64, gv: &GapVariables, mass: Mass) -> Matrix2 {
    let m = mass.value();
    let k = gv.kappa;
    let s = sign0(dx);
    let decay = 0.5 * (-dx.abs() * k).exp();
    Matrix2::new(
        (gv.energy - m) / k * decay,
        -s * decay,
        s * decay,
        (gv.energy + m) / k * decay,
    )
}

/// The real `2N x 2N` matrix `Delta(E)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaMatrix {
    n_centers: usize,
    entries: DMatrix<f64>,
}

impl DeltaMatrix {
    pub fn n_centers(&self) -> usize {
        self.n_centers
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// The 2x2 block coupling center `i` to center `j`.
    pub fn block(&self, i: usize, j: usize) -> Matrix2 {
        let e = &self.entries;
        Matrix2::new(
            e[(2 * i, 2 * j)],
            e[(2 * i, 2 * j + 1)],
            e[(2 * i + 1, 2 * j)],
            e[(2 * i + 1, 2 * j + 1)],
        )
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        self.entries.clone().lu().determinant()
    }

    /// Number of negative eigenvalues. `Delta` is real symmetric and its
    /// eigenvalues are non-decreasing in `E`, so this count drops by one at
    /// every bound state.
    pub fn negative_inertia(&self) -> usize {
        SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .filter(|&&v| v < 0.0)
            .count()
    }
}

pub fn assemble_delta_matrix(problem: &BoundStateProblem, energy: f64) -> Result<DeltaMatrix> {
    let gv = GapVariables::new(energy, problem.mass())?;
    Ok(assemble_at(problem, &gv))
}

fn assemble_at(problem: &BoundStateProblem, gv: &GapVariables) -> DeltaMatrix {
    let centers = problem.centers();
    let n = centers.len();
    let mut entries = DMatrix::zeros(2 * n, 2 * n);
    for (i, ci) in centers.iter().enumerate() {
        for (j, cj) in centers.iter().enumerate() {
            let mut b = free_greens_at(ci.position - cj.position, gv, problem.mass());
            if i == j {
                b.a11 += 1.0 / cj.strength;
                b.a22 += 1.0 / cj.strength;
            }
            entries[(2 * i, 2 * j)] = b.a11;
            entries[(2 * i, 2 * j + 1)] = b.a12;
            entries[(2 * i + 1, 2 * j)] = b.a21;
            entries[(2 * i + 1, 2 * j + 1)] = b.a22;
        }
    }
    DeltaMatrix { n_centers: n, entries }
}

pub fn delta_determinant(problem: &BoundStateProblem, energy: f64) -> Result<f64> {
    Ok(assemble_delta_matrix(problem, energy)?.determinant())
}

fn det_unchecked(problem: &BoundStateProblem, energy: f64) -> f64 {
    match GapVariables::new(energy, problem.mass()) {
        Ok(gv) => assemble_at(problem, &gv).determinant(),
        Err(_) => f64::NAN,
    }
}

fn residual_scale(problem: &BoundStateProblem, interval: (f64, f64), points: usize) -> f64 {
    let (lo, hi) = interval;
    let n = points.max(2);
    let mut mags: Vec<f64> = (0..n)
        .map(|i| det_unchecked(problem, lo + (hi - lo) * i as f64 / (n - 1) as f64).abs())
        .filter(|v| v.is_finite() && *v > 0.0)
        .collect();
    if mags.is_empty() {
        return 1.0;
    }
    mags.sort_by(f64::total_cmp);
    mags[mags.len() / 2]
}

/// All zeros of `det Delta(E)` in the search interval.
///
/// Roots are located by counting negative eigenvalues of `Delta` and
/// bisecting on the count, which separates levels that are closer than the
/// determinant can resolve in floating point. Each root carries
/// `|det Delta|` relative to its median over the scan grid.
pub fn greens_spectrum(problem: &BoundStateProblem, opts: &SolverOptions) -> Result<EnergySpectrum> {
    opts.validate()?;
    let mass = problem.mass();
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let count = |e: f64| match GapVariables::new(e, mass) {
        Ok(gv) => -(assemble_at(problem, &gv).negative_inertia() as i64),
        Err(_) => 0,
    };
    let energies = rootfind::solve_step_count(count, interval, &scaled)?;
    let scale = residual_scale(problem, interval, opts.grid_points);
    let roots = energies
        .into_iter()
        .map(|e| SpectralRoot {
            energy: e,
            residual: det_unchecked(problem, e).abs() / scale,
            multiplicity: Multiplicity::Simple,
            method: METHOD,
            branch: None,
        })
        .collect();
    Ok(EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy))
}

/// Zeros of `det Delta(E)` by a sign-change and touching-root scan of the
/// determinant itself. Adequate when levels are well separated; kept as an
/// independent cross-check of [`greens_spectrum`].
pub fn greens_spectrum_by_determinant(problem: &BoundStateProblem, opts: &SolverOptions) -> Result<EnergySpectrum> {
    let mass = problem.mass();
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let hint = RootCountHint {
        expected: None,
        at_most: Some(2 * problem.len()),
    };
    let found = rootfind::solve_all_with_hint(|e| det_unchecked(problem, e), interval, &scaled, hint)?;
    let roots = found
        .into_iter()
        .map(|r| SpectralRoot {
            energy: r.energy,
            residual: r.residual,
            multiplicity: r.multiplicity,
            method: METHOD,
            branch: None,
        })
        .collect();
    Ok(EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy))
}
