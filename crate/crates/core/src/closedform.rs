//! Closed-form bound-state equations for one, two and three centers.
//!
//! Both conventions are rotations by an angle `Theta(g)`, and every equation
//! below depends on `g` only through `s = sin Theta`, `c = cos Theta`. The
//! squeeze equations are the Cayley ones with `g/(1 - g^2/4)` replaced by
//! `tan g`.
//!
//! The equations are written in `X = E s / (kappa c)`, which is singular
//! where `c = 0` (`g = 2` for Cayley, `g = pi/2` for squeeze). The `*_residual`
//! functions used for root finding multiply through by the vanishing
//! denominators, which leaves them regular for every `g`; the verbatim
//! `X`-space forms are exposed alongside and return an error at the
//! singular couplings.

use crate::error::{Error, Result};
use crate::gap::GapVariables;
use crate::model::{DeltaConvention, EnergySpectrum, Mass, Multiplicity, SpectralRoot};
use crate::presets::{Preset, PresetKind};
use crate::rootfind::{self, SolverOptions};

pub const METHOD: &str = "closedform";

/// `(sin Theta, cos Theta)`; rational in `g` for Cayley.
pub fn angle_parts(g: f64, convention: DeltaConvention) -> (f64, f64) {
    match convention {
        DeltaConvention::CayleySelfAdjoint => {
            let q = 0.25 * g * g;
            (g / (1.0 + q), (1.0 - q) / (1.0 + q))
        }
        DeltaConvention::SqueezedRectangle => g.sin_cos(),
    }
}

/// `tan^2 Theta`: `g^2/(1 - g^2/4)^2` or `tan^2 g`.
pub fn tan_squared(g: f64, convention: DeltaConvention) -> Result<f64> {
    match convention {
        DeltaConvention::CayleySelfAdjoint => {
            let d = 1.0 - 0.25 * g * g;
            if d == 0.0 {
                return Err(Error::Singularity {
                    coupling: g,
                    context: "g^2/(1 - g^2/4)^2",
                });
            }
            Ok(g * g / (d * d))
        }
        DeltaConvention::SqueezedRectangle => {
            let (s, c) = g.sin_cos();
            if c.abs() < f64::EPSILON {
                return Err(Error::Singularity {
                    coupling: g,
                    context: "tan^2 g",
                });
            }
            Ok((s / c) * (s / c))
        }
    }
}

/// The polynomial variable `X = E tan(Theta) / kappa`.
pub fn cubic_variable(energy: f64, g: f64, mass: Mass, convention: DeltaConvention) -> Result<f64> {
    let gv = GapVariables::new(energy, mass)?;
    let (s, c) = angle_parts(g, convention);
    tan_squared(g, convention)?;
    Ok(gv.energy_ratio() * s / c)
}

fn in_gap(mass: Mass, e: f64) -> Option<f64> {
    (e.is_finite() && e.abs() < mass.value()).then_some(e)
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `m cos(Theta) sign(sin Theta)`; for Cayley this is `m(4 - g^2)/(4 + g^2)`
/// for `g > 0`. Absent when no level lies strictly inside the gap.
pub fn single_energy(g: f64, mass: Mass, convention: DeltaConvention) -> Option<f64> {
    let (s, c) = angle_parts(g, convention);
    if s == 0.0 {
        return None;
    }
    in_gap(mass, mass.value() * c * sign(s))
}

/// Level of `n` identical centers merged at one point.
///
/// Squeeze: a single center of coupling `n g`. Cayley:
/// `m cos(n Theta) sign(sin n Theta)`, written as the rational functions
/// of `g` for `n = 2, 3`.
pub fn merged_limit_energy(n_centers: usize, g: f64, mass: Mass, convention: DeltaConvention) -> Result<Option<f64>> {
    if !(1..=3).contains(&n_centers) {
        return Err(Error::UnsupportedCenterCount(n_centers));
    }
    let m = mass.value();
    Ok(match convention {
        DeltaConvention::SqueezedRectangle => single_energy(n_centers as f64 * g, mass, convention),
        DeltaConvention::CayleySelfAdjoint => {
            let g2 = g * g;
            let q = g2 + 4.0;
            let (num, sgn) = match n_centers {
                1 => return Ok(single_energy(g, mass, convention)),
                2 => ((g2 * g2 - 24.0 * g2 + 16.0) / (q * q), sign(g) * sign(4.0 - g2)),
                _ => (
                    (-g2 * g2 * g2 + 60.0 * g2 * g2 - 240.0 * g2 + 64.0) / (q * q * q),
                    sign(g) * sign(3.0 * g2 * g2 - 40.0 * g2 + 48.0),
                ),
            };
            if sgn == 0.0 {
                None
            } else {
                in_gap(mass, m * num * sgn)
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Symmetric double well, centers at `-r` and `+r`.
///
/// Cayley: `(1 - g^2/4) kappa - g [E +- m e^{-2 r kappa}]`, verbatim.
/// Squeeze: `cos g kappa - sin g [E +- m e^{-2 r kappa}]`, i.e. the tan form
/// multiplied by `cos g`.
pub fn double_symmetric_residual(
    energy: f64,
    g: f64,
    r: f64,
    mass: Mass,
    convention: DeltaConvention,
    branch: Branch,
) -> Result<f64> {
    let gv = GapVariables::new(energy, mass)?;
    let m = mass.value();
    let tail = energy + branch.sign() * m * (-2.0 * r * gv.kappa).exp();
    Ok(match convention {
        DeltaConvention::CayleySelfAdjoint => (1.0 - 0.25 * g * g) * gv.kappa - g * tail,
        DeltaConvention::SqueezedRectangle => g.cos() * gv.kappa - g.sin() * tail,
    })
}

/// `(1 - e^{-4z}) X^2 - 2X + 1 - e^{-4z} tan^2 Theta`, `z = r kappa`.
pub fn double_symmetric_quadratic(energy: f64, g: f64, r: f64, mass: Mass, convention: DeltaConvention) -> Result<f64> {
    let x = cubic_variable(energy, g, mass, convention)?;
    let t2 = tan_squared(g, convention)?;
    let gv = GapVariables::new(energy, mass)?;
    let e4 = (-4.0 * r * gv.kappa).exp();
    Ok((1.0 - e4) * x * x - 2.0 * x + 1.0 - e4 * t2)
}

/// `E^2 - m^2 (1 - (1 - e^{-4z}) sin^2 Theta)` for the dipole at `-+r`.
pub fn dipole_residual(energy: f64, g: f64, r: f64, mass: Mass, convention: DeltaConvention) -> Result<f64> {
    let gv = GapVariables::new(energy, mass)?;
    let (s, _) = angle_parts(g, convention);
    let m = mass.value();
    let one_minus = -(-4.0 * r * gv.kappa).exp_m1();
    Ok(energy * energy - m * m * (1.0 - one_minus * s * s))
}

/// `X^2 - (1 + e^{-4z} tan^2 Theta) / (1 - e^{-4z})`; symmetric under `X -> -X`.
pub fn dipole_x_residual(energy: f64, g: f64, r: f64, mass: Mass, convention: DeltaConvention) -> Result<f64> {
    let x = cubic_variable(energy, g, mass, convention)?;
    let t2 = tan_squared(g, convention)?;
    let gv = GapVariables::new(energy, mass)?;
    let e4 = (-4.0 * r * gv.kappa).exp();
    Ok(x * x - (1.0 + e4 * t2) / (1.0 - e4))
}

/// Coefficients of the triple same-polarity cubic `G3 X^3 + G2 X^2 + G1 X + G0`,
/// together with the `tanh` form `X^3 t1 t2 - X^2 (t1 + t2 + t1 t2) + X F1 + F0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub t1: f64,
    pub t2: f64,
    pub f0: f64,
    pub f1: f64,
}

impl CubicCoefficients {
    pub fn eval(&self, x: f64) -> f64 {
        ((self.g3 * x + self.g2) * x + self.g1) * x + self.g0
    }

    pub fn eval_tanh_form(&self, x: f64) -> f64 {
        let (t1, t2) = (self.t1, self.t2);
        x * x * x * t1 * t2 - x * x * (t1 + t2 + t1 * t2) + x * self.f1 + self.f0
    }
}

pub fn triple_same_coeffs(
    energy: f64,
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
) -> Result<CubicCoefficients> {
    let gv = GapVariables::new(energy, mass)?;
    let t2 = tan_squared(g, convention)?;
    let sec2 = 1.0 + t2;
    let (z1, z2) = (r1 * gv.kappa, r2 * gv.kappa);
    let e1 = (-2.0 * z1).exp();
    let e2 = (-2.0 * z2).exp();
    let (th1, th2) = (z1.tanh(), z2.tanh());
    Ok(CubicCoefficients {
        g0: -1.0 + t2 * (e1 + e2 + e1 * e2),
        g1: 3.0 - t2 * (e1 + e2 - e1 * e2),
        g2: (1.0 + e1) * (1.0 + e2) - 4.0,
        g3: (1.0 - e1) * (1.0 - e2),
        t1: th1,
        t2: th2,
        f0: t2 - 0.25 * sec2 * (1.0 + th1) * (1.0 + th2),
        f1: 0.25 * ((3.0 - t2) * (1.0 + th1 + th2) + 3.0 * sec2 * th1 * th2),
    })
}

/// The cubic in the shifted variable `Y = X - 1` with `X = w/v + 1`,
/// `w = E s - kappa c`, `v = kappa c`, multiplied by `v^3`. The three
/// levels that converge on the single-center energy at large separation
/// sit near `w = 0`, where this form has no cancellation.
pub fn triple_same_residual(
    energy: f64,
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
) -> Result<f64> {
    let gv = GapVariables::new(energy, mass)?;
    let (s, c) = angle_parts(g, convention);
    Ok(shifted_cubic(&gv, s, c, r1, r2))
}

struct ShiftedCubic {
    a3: f64,
    a2: f64,
    a1_plain: f64,
    a: f64,
    e1e2: f64,
}

fn shifted_parts(gv: &GapVariables, r1: f64, r2: f64) -> ShiftedCubic {
    let e1 = (-2.0 * r1 * gv.kappa).exp();
    let e2 = (-2.0 * r2 * gv.kappa).exp();
    let e1e2 = e1 * e2;
    ShiftedCubic {
        a3: (1.0 - e1) * (1.0 - e2),
        a2: -2.0 * (e1 + e2) + 4.0 * e1e2,
        a1_plain: -(e1 + e2) + 5.0 * e1e2,
        a: e1 + e2 - e1e2,
        e1e2,
    }
}

fn shifted_cubic(gv: &GapVariables, s: f64, c: f64, r1: f64, r2: f64) -> f64 {
    let p = shifted_parts(gv, r1, r2);
    let k = gv.kappa;
    let w = gv.energy * s - k * c;
    let v = k * c;
    // G3 w^3 + a2 w^2 v + (a1 v^2 - A s^2 k^2) w + 2 e1 e2 k^3 c
    p.a3 * w * w * w + p.a2 * w * w * v + (p.a1_plain * v * v - p.a * s * s * k * k) * w + 2.0 * p.e1e2 * k * k * k * c
}

/// `X - 1` and `X^2 - D` for the alternating triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingFactors {
    pub factor1: f64,
    pub factor2: f64,
}

/// The two factors in `X` space.
///
/// Cayley: `D = [(g^2-4)^2 + 16 g^2 (e1 + e2 - e1 e2)] / [(g^2-4)^2 (1-e1)(1-e2)]`
/// with `e_j = e^{-2 z_j}`. Squeeze: `factor2 = X^2 t1 t2 - D'` with
/// `D' = sec^2 g (1+t1)(1+t2)/4 - tan^2 g t1 t2`, `t_j = tanh z_j`.
pub fn triple_alternating_residuals(
    energy: f64,
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
) -> Result<AlternatingFactors> {
    let x = cubic_variable(energy, g, mass, convention)?;
    let gv = GapVariables::new(energy, mass)?;
    let (z1, z2) = (r1 * gv.kappa, r2 * gv.kappa);
    let factor2 = match convention {
        DeltaConvention::CayleySelfAdjoint => x * x - cayley_alternating_d(g, z1, z2),
        DeltaConvention::SqueezedRectangle => {
            let (t1, t2) = (z1.tanh(), z2.tanh());
            x * x * t1 * t2 - squeeze_alternating_d(g, t1, t2)
        }
    };
    Ok(AlternatingFactors {
        factor1: x - 1.0,
        factor2,
    })
}

pub fn cayley_alternating_d(g: f64, z1: f64, z2: f64) -> f64 {
    let e1 = (-2.0 * z1).exp();
    let e2 = (-2.0 * z2).exp();
    let q = (g * g - 4.0).powi(2);
    (q + 16.0 * g * g * (e1 + e2 - e1 * e2)) / (q * (1.0 - e1) * (1.0 - e2))
}

pub fn squeeze_alternating_d(g: f64, t1: f64, t2: f64) -> f64 {
    let c = g.cos();
    let tan2 = g.tan().powi(2);
    0.25 / (c * c) * (1.0 + t1) * (1.0 + t2) - tan2 * t1 * t2
}

/// Denominator-free forms: `E s - kappa c` and
/// `P E^2 s^2 - (1 - P s^2) kappa^2`, `P = (1-e1)(1-e2)`.
pub fn triple_alternating_cleared(
    energy: f64,
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
) -> Result<AlternatingFactors> {
    let gv = GapVariables::new(energy, mass)?;
    let (s, c) = angle_parts(g, convention);
    let k = gv.kappa;
    let p = (-2.0 * r1 * k).exp_m1() * (-2.0 * r2 * k).exp_m1();
    Ok(AlternatingFactors {
        factor1: energy * s - k * c,
        factor2: p * energy * energy * s * s - (1.0 - p * s * s) * k * k,
    })
}

fn grid_scale<F: Fn(f64) -> f64>(f: &F, interval: (f64, f64), points: usize) -> f64 {
    let (lo, hi) = interval;
    let n = points.max(2);
    let mut mags: Vec<f64> = (0..n)
        .map(|i| f(lo + (hi - lo) * i as f64 / (n - 1) as f64).abs())
        .filter(|v| v.is_finite() && *v > 0.0)
        .collect();
    if mags.is_empty() {
        return 1.0;
    }
    mags.sort_by(f64::total_cmp);
    mags[mags.len() / 2]
}

fn root(energy: f64, residual: f64, branch: Option<&'static str>) -> SpectralRoot {
    SpectralRoot {
        energy,
        residual,
        multiplicity: Multiplicity::Simple,
        method: METHOD,
        branch,
    }
}

fn found_roots(found: Vec<rootfind::FoundRoot>, branch: Option<&'static str>) -> Vec<SpectralRoot> {
    found
        .into_iter()
        .map(|r| SpectralRoot {
            multiplicity: r.multiplicity,
            ..root(r.energy, r.residual, branch)
        })
        .collect()
}

pub fn double_symmetric_energies(
    g: f64,
    r: f64,
    mass: Mass,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> Result<EnergySpectrum> {
    opts.validate()?;
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let mut roots = Vec::new();
    for branch in Branch::BOTH {
        let f = |e: f64| double_symmetric_residual(e, g, r, mass, convention, branch).unwrap_or(f64::NAN);
        let found = rootfind::solve_all(f, interval, &scaled)?;
        roots.extend(found_roots(found, Some(branch.label())));
    }
    Ok(EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy))
}

/// Solves `|E| = m sqrt(1 - p(kappa) s^2)` for both signs of `E`, where `p`
/// decreases towards the continuum. Damped fixed-point iteration from
/// `m |c|` approaches the level from below; the last iterate brackets the
/// root with an upper point found by stepping outwards, and bisection on
/// `E^2 - m^2 (1 - p s^2)` finishes. Returns the positive root, if any lies
/// inside the search interval.
fn symmetric_pair_root<P: Fn(f64) -> f64>(
    p_of_kappa: P,
    s2: f64,
    c_abs: f64,
    mass: Mass,
    opts: &SolverOptions,
) -> Result<Option<f64>> {
    if s2 == 0.0 {
        return Ok(None);
    }
    let m = mass.value();
    let (_, top) = opts.interval(mass);
    let kappa = |e: f64| ((m - e) * (m + e)).max(0.0).sqrt();
    let target = |e: f64| m * (1.0 - p_of_kappa(kappa(e)) * s2).max(0.0).sqrt();
    let h = |e: f64| e * e - target(e).powi(2);

    let mut e = m * c_abs;
    if e >= top {
        return Ok(None);
    }
    let tol = 1e-13 * m;
    for _ in 0..200 {
        let next = (0.5 * e + 0.5 * target(e)).min(top);
        let step = next - e;
        e = next;
        if step.abs() < tol {
            break;
        }
    }
    // iterates stay below the first fixed point, so h(e) <= 0 there
    let mut lo = e.min(top);
    while h(lo) > 0.0 && lo > m * c_abs {
        lo = (lo - 1e-6 * m).max(m * c_abs);
    }
    if h(top) <= 0.0 {
        return Ok(None);
    }
    let mut hi = top;
    let mut step = 1e-12 * m;
    while lo + step < top {
        if h(lo + step) > 0.0 {
            hi = lo + step;
            break;
        }
        step *= 4.0;
    }
    let f_lo = h(lo);
    if f_lo == 0.0 {
        return Ok(Some(lo));
    }
    let bracket = rootfind::Bracket {
        lo,
        hi,
        f_lo,
        f_hi: h(hi),
        kind: rootfind::BracketKind::SignChange,
        scale: 1.0,
    };
    Ok(rootfind::refine_root(h, &bracket, &opts.for_mass(mass)))
}

pub fn dipole_energies(
    g: f64,
    r: f64,
    mass: Mass,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> Result<EnergySpectrum> {
    opts.validate()?;
    let (s, c) = angle_parts(g, convention);
    let p = |k: f64| -(-4.0 * r * k).exp_m1();
    let pos = symmetric_pair_root(p, s * s, c.abs(), mass, opts)?;
    let f = |e: f64| dipole_residual(e, g, r, mass, convention).unwrap_or(f64::NAN);
    let scale = grid_scale(&f, opts.interval(mass), opts.grid_points);
    let roots = pos
        .into_iter()
        .flat_map(|e| [-e, e])
        .map(|e| root(e, f(e).abs() / scale, None))
        .collect();
    Ok(EnergySpectrum::from_roots(roots, 10.0 * opts.tol_energy * mass.value()))
}

/// Real roots of `a3 y^3 + a2 y^2 + a1 y + a0`, located between the
/// critical points and refined by bisection. Used to seed the triple
/// cubic; accuracy only has to separate the roots.
fn real_cubic_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let p = |y: f64| ((a3 * y + a2) * y + a1) * y + a0;
    if a3 == 0.0 {
        return Vec::new();
    }
    let bound = 1.0 + (a2 / a3).abs().max((a1 / a3).abs()).max((a0 / a3).abs());
    let mut knots = vec![-bound];
    // p' = 3 a3 y^2 + 2 a2 y + a1
    let (qa, qb, qc) = (3.0 * a3, 2.0 * a2, a1);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc >= 0.0 {
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        let mut crit: Vec<f64> = Vec::new();
        if q != 0.0 {
            crit.push(q / qa);
            crit.push(qc / q);
        } else {
            crit.push(0.0);
        }
        crit.sort_by(f64::total_cmp);
        knots.extend(crit.into_iter().filter(|y| y.abs() < bound));
    }
    knots.push(bound);
    let mut roots = Vec::new();
    for pair in knots.windows(2) {
        let (mut a, mut b) = (pair[0], pair[1]);
        let (mut fa, fb) = (p(a), p(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = p(mid);
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}

pub fn triple_same_energies(
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> Result<EnergySpectrum> {
    opts.validate()?;
    let interval = opts.interval(mass);
    let scaled = opts.for_mass(mass);
    let m = mass.value();
    let (s, c) = angle_parts(g, convention);
    let f = |e: f64| match GapVariables::new(e, mass) {
        Ok(gv) => shifted_cubic(&gv, s, c, r1, r2),
        Err(_) => f64::NAN,
    };
    let scanned = rootfind::solve_all(f, interval, &scaled)?;
    let scale = grid_scale(&f, interval, opts.grid_points);
    let mut roots = found_roots(scanned.clone(), None);

    // Levels closer than a grid cell show up as one sign change. Solve the
    // cubic in Y with its coefficients frozen at each found root, map the
    // roots back to energies and polish each one on the full residual.
    if c.abs() > 1e-8 && s != 0.0 {
        let tan2 = (s / c) * (s / c);
        for found in &scanned {
            let gv = GapVariables::new(found.energy, mass)?;
            let p = shifted_parts(&gv, r1, r2);
            let ys = real_cubic_roots(p.a3, p.a2, p.a1_plain - tan2 * p.a, 2.0 * (1.0 + tan2) * p.e1e2);
            let seeds: Vec<f64> = ys
                .iter()
                .map(|y| {
                    let u = (y + 1.0) * c / s;
                    m * u / (1.0 + u * u).sqrt()
                })
                .filter(|e| e.abs() < interval.1)
                .collect();
            for (i, &seed) in seeds.iter().enumerate() {
                let gap = seeds
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, o)| (o - seed).abs())
                    .fold(1e-3 * m, f64::min);
                let half = (0.25 * gap).max(scaled.tol_energy);
                let (lo, hi) = ((seed - half).max(interval.0), (seed + half).min(interval.1));
                let (f_lo, f_hi) = (f(lo), f(hi));
                if f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi >= 0.0 {
                    continue;
                }
                let bracket = rootfind::Bracket {
                    lo,
                    hi,
                    f_lo,
                    f_hi,
                    kind: rootfind::BracketKind::SignChange,
                    scale,
                };
                if let Some(e) = rootfind::refine_root(f, &bracket, &scaled) {
                    roots.push(root(e, f(e).abs() / scale, None));
                }
            }
        }
    }
    let spectrum = EnergySpectrum::from_roots(roots, 10.0 * scaled.tol_energy);
    if spectrum.len() > 3 {
        return Err(Error::SolverBudgetExceeded(format!(
            "triple cubic produced {} roots, at most 3 are possible",
            spectrum.len()
        )));
    }
    Ok(spectrum)
}

pub fn triple_alternating_energies(
    g: f64,
    r1: f64,
    r2: f64,
    mass: Mass,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> Result<EnergySpectrum> {
    opts.validate()?;
    let interval = opts.interval(mass);
    let (s, c) = angle_parts(g, convention);
    let cleared = |e: f64| triple_alternating_cleared(e, g, r1, r2, mass, convention);
    let f1 = |e: f64| cleared(e).map(|f| f.factor1).unwrap_or(f64::NAN);
    let f2 = |e: f64| cleared(e).map(|f| f.factor2).unwrap_or(f64::NAN);
    let mut roots = Vec::new();

    if let Some(e) = single_energy(g, mass, convention).filter(|e| e.abs() < interval.1) {
        let scale = grid_scale(&f1, interval, opts.grid_points);
        roots.push(root(e, f1(e).abs() / scale, Some("decoupled")));
    }
    let p = |k: f64| (-2.0 * r1 * k).exp_m1() * (-2.0 * r2 * k).exp_m1();
    if let Some(e) = symmetric_pair_root(p, s * s, c.abs(), mass, opts)? {
        let scale = grid_scale(&f2, interval, opts.grid_points);
        for e in [-e, e] {
            roots.push(root(e, f2(e).abs() / scale, Some("pair")));
        }
    }
    Ok(EnergySpectrum::from_roots(roots, 10.0 * opts.tol_energy * mass.value()))
}

/// Closed-form spectrum of a preset.
pub fn closedform_spectrum(
    preset: &Preset,
    convention: DeltaConvention,
    opts: &SolverOptions,
) -> Result<EnergySpectrum> {
    let m = preset.mass;
    let (r1, r2) = (preset.r1 / m.value(), preset.r2 / m.value());
    let g = preset.g;
    match preset.kind {
        PresetKind::SingleDelta => {
            opts.validate()?;
            let interval = opts.interval(m);
            let roots = single_energy(g, m, convention)
                .filter(|e| e.abs() < interval.1)
                .map(|e| root(e, 0.0, None))
                .into_iter()
                .collect();
            Ok(EnergySpectrum::from_roots(roots, 0.0))
        }
        PresetKind::DoubleSymmetric => double_symmetric_energies(g, r1, m, convention, opts),
        PresetKind::Dipole => dipole_energies(g, r1, m, convention, opts),
        PresetKind::TripleSamePolarity => triple_same_energies(g, r1, r2, m, convention, opts),
        PresetKind::TripleAlternating => triple_alternating_energies(g, r1, r2, m, convention, opts),
    }
}
