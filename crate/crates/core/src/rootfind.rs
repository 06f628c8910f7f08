//! Root location on the energy gap.
//!
//! Two families of solvers live here:
//!
//! * [`scan_brackets`] / [`refine_root`] / [`solve_all`] work on an arbitrary
//!   continuous residual. A uniform grid finds sign changes; interior minima
//!   of `|f|` are probed with golden-section search, which either uncovers a
//!   hidden pair of sign changes or yields a touching (even-multiplicity)
//!   candidate.
//! * [`solve_step_count`] and [`solve_level_crossings`] work on a monotone
//!   counting function (an eigenvalue inertia, a phase in units of pi). They
//!   find every root, however tightly clustered, by bisection on the count.

use crate::error::{Error, Result};
use crate::model::{Mass, Multiplicity};

/// Tunables for the energy solvers. Energies (`tol_energy`, `edge_margin`)
/// are fractions of the mass; residual tolerances are relative.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub grid_points: usize,
    pub tol_energy: f64,
    pub tol_residual: f64,
    pub max_refinements: usize,
    pub edge_margin: f64,
    pub touching_threshold: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid_points: 4001,
            tol_energy: 1e-12,
            tol_residual: 1e-10,
            max_refinements: 3,
            edge_margin: 1e-9,
            touching_threshold: 1e-8,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::InvalidParameter {
                name: "grid_points",
                value: self.grid_points as f64,
                reason: "at least two grid points are required",
            });
        }
        let positive = [
            ("tol_energy", self.tol_energy),
            ("tol_residual", self.tol_residual),
            ("edge_margin", self.edge_margin),
            ("touching_threshold", self.touching_threshold),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "tolerances must be positive",
                });
            }
        }
        if self.edge_margin >= 1.0 {
            return Err(Error::InvalidParameter {
                name: "edge_margin",
                value: self.edge_margin,
                reason: "edge margin must be below 1",
            });
        }
        Ok(())
    }

    /// Copy with `tol_energy` converted to absolute energy units.
    pub fn for_mass(&self, mass: Mass) -> SolverOptions {
        SolverOptions {
            tol_energy: self.tol_energy * mass.value(),
            ..self.clone()
        }
    }

    /// Search interval `[-m(1 - margin), m(1 - margin)]`.
    pub fn interval(&self, mass: Mass) -> (f64, f64) {
        crate::gap::search_interval(mass, self.edge_margin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    SignChange,
    TouchingCandidate,
}

/// An interval believed to hold one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub kind: BracketKind,
    /// Median `|f|` over the scan grid; residual tolerances are relative to it.
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoundRoot {
    pub energy: f64,
    /// `|f(root)| / scale`
    pub residual: f64,
    pub multiplicity: Multiplicity,
}

/// Optional knowledge about how many roots to expect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RootCountHint {
    /// Refine the grid while fewer roots than this are found.
    pub expected: Option<usize>,
    /// Algebraic upper bound; finding more is an error.
    pub at_most: Option<usize>,
}

fn same_sign(a: f64, b: f64) -> bool {
    (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)
}

fn median_abs(values: &[f64]) -> f64 {
    let mut mags: Vec<f64> = values
        .iter()
        .map(|v| v.abs())
        .filter(|v| v.is_finite() && *v > 0.0)
        .collect();
    if mags.is_empty() {
        return 1.0;
    }
    mags.sort_by(f64::total_cmp);
    mags[mags.len() / 2]
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

struct GoldenProbe {
    x_min: f64,
    f_min: f64,
    /// First point where `sign * f` went negative.
    flip: Option<f64>,
}

/// Golden-section minimisation of `sign * f` on `[a, b]`.
fn golden_probe<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, sign: f64, tol: f64) -> GoldenProbe {
    let g = |x: f64| sign * f(x);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    let mut flip = None;
    for _ in 0..200 {
        if fc < 0.0 {
            flip = Some(c);
            break;
        }
        if fd < 0.0 {
            flip = Some(d);
            break;
        }
        if (b - a) <= tol || c <= a || d >= b {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = g(d);
        }
    }
    let (x_min, f_min) = if fc <= fd { (c, fc) } else { (d, fd) };
    GoldenProbe {
        x_min,
        f_min: sign * f_min,
        flip,
    }
}

/// Uniform-grid scan for sign changes and touching candidates.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, interval: (f64, f64), opts: &SolverOptions) -> Vec<Bracket> {
    let (lo, hi) = interval;
    let n = opts.grid_points.max(2);
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Vec::new();
    }
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
            }
        })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let scale = median_abs(&fs);
    let tol = opts.tol_energy;

    let mut brackets = Vec::new();
    let sign_change = |i: usize| -> bool {
        let (a, b) = (fs[i], fs[i + 1]);
        (a * b < 0.0) || (b == 0.0 && i + 1 < n - 1)
    };

    for i in 0..n - 1 {
        if sign_change(i) {
            brackets.push(Bracket {
                lo: xs[i],
                hi: xs[i + 1],
                f_lo: fs[i],
                f_hi: fs[i + 1],
                kind: BracketKind::SignChange,
                scale,
            });
        }
    }

    for i in 1..n - 1 {
        let (a, b, c) = (fs[i - 1], fs[i], fs[i + 1]);
        if b == 0.0 || !same_sign(a, b) || !same_sign(b, c) {
            continue;
        }
        let s = b.signum();
        let (a, b, c) = (s * a, s * b, s * c);
        if !(b <= a && b <= c) {
            continue;
        }
        let curvature = a - 2.0 * b + c;
        let vertex = if curvature > 0.0 {
            b - (c - a) * (c - a) / (8.0 * curvature)
        } else {
            b
        };
        let local = a.max(c);
        if vertex > 0.5 * local {
            continue;
        }
        let probe = golden_probe(&f, xs[i - 1], xs[i + 1], s, tol);
        match probe.flip {
            Some(p) => {
                let fp = f(p);
                brackets.push(Bracket {
                    lo: xs[i - 1],
                    hi: p,
                    f_lo: fs[i - 1],
                    f_hi: fp,
                    kind: BracketKind::SignChange,
                    scale,
                });
                brackets.push(Bracket {
                    lo: p,
                    hi: xs[i + 1],
                    f_lo: fp,
                    f_hi: fs[i + 1],
                    kind: BracketKind::SignChange,
                    scale,
                });
            }
            None if probe.f_min.abs() < opts.touching_threshold * local => {
                brackets.push(Bracket {
                    lo: xs[i - 1],
                    hi: xs[i + 1],
                    f_lo: fs[i - 1],
                    f_hi: fs[i + 1],
                    kind: BracketKind::TouchingCandidate,
                    scale,
                });
            }
            None => {}
        }
    }

    brackets.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    brackets
}

/// Bisection for sign changes, golden-section for touching candidates.
/// Returns `None` when a touching candidate's minimum does not clear
/// `tol_residual * scale`.
pub fn refine_root<F: Fn(f64) -> f64>(f: F, bracket: &Bracket, opts: &SolverOptions) -> Option<f64> {
    let accept = opts.tol_residual * bracket.scale;
    match bracket.kind {
        BracketKind::SignChange => {
            let (mut lo, mut hi) = (bracket.lo, bracket.hi);
            let (mut f_lo, mut f_hi) = (bracket.f_lo, bracket.f_hi);
            if f_lo == 0.0 {
                return Some(lo);
            }
            if f_hi == 0.0 {
                return Some(hi);
            }
            for _ in 0..300 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                if fm == 0.0 {
                    return Some(mid);
                }
                if same_sign(fm, f_lo) {
                    lo = mid;
                    f_lo = fm;
                } else {
                    hi = mid;
                    f_hi = fm;
                }
                if hi - lo <= opts.tol_energy && f_lo.abs().min(f_hi.abs()) <= accept {
                    break;
                }
            }
            Some(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
        }
        BracketKind::TouchingCandidate => {
            let sign = if bracket.f_lo != 0.0 {
                bracket.f_lo.signum()
            } else {
                bracket.f_hi.signum()
            };
            let probe = golden_probe(&f, bracket.lo, bracket.hi, sign, opts.tol_energy);
            if let Some(p) = probe.flip {
                return Some(p);
            }
            (probe.f_min.abs() < accept).then_some(probe.x_min)
        }
    }
}

/// Every root of `f` in `interval`, sorted, with near-duplicates merged.
pub fn solve_all<F: Fn(f64) -> f64>(f: F, interval: (f64, f64), opts: &SolverOptions) -> Result<Vec<FoundRoot>> {
    opts.validate()?;
    let brackets = scan_brackets(&f, interval, opts);
    let mut roots: Vec<FoundRoot> = Vec::with_capacity(brackets.len());
    for b in &brackets {
        if let Some(x) = refine_root(&f, b, opts) {
            roots.push(FoundRoot {
                energy: x,
                residual: f(x).abs() / b.scale,
                multiplicity: match b.kind {
                    BracketKind::SignChange => Multiplicity::Simple,
                    BracketKind::TouchingCandidate => Multiplicity::Touching,
                },
            });
        }
    }
    roots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let min_sep = 10.0 * opts.tol_energy;
    let mut out: Vec<FoundRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last_mut() {
            Some(last) if r.energy - last.energy <= min_sep => {
                if r.residual < last.residual {
                    *last = r;
                }
            }
            _ => out.push(r),
        }
    }
    Ok(out)
}

/// [`solve_all`] with grid refinement driven by a root-count hint.
pub fn solve_all_with_hint<F: Fn(f64) -> f64>(
    f: F,
    interval: (f64, f64),
    opts: &SolverOptions,
    hint: RootCountHint,
) -> Result<Vec<FoundRoot>> {
    let mut current = opts.clone();
    for attempt in 0..=opts.max_refinements {
        let roots = solve_all(&f, interval, &current)?;
        let last = attempt == opts.max_refinements;
        let too_many = hint.at_most.is_some_and(|max| roots.len() > max);
        let too_few = hint.expected.is_some_and(|want| roots.len() < want);
        if too_many && last {
            return Err(Error::SolverBudgetExceeded(format!(
                "found {} roots, algebraic bound is {} after {} refinements",
                roots.len(),
                hint.at_most.unwrap_or(0),
                opts.max_refinements
            )));
        }
        if (!too_many && !too_few) || last {
            return Ok(roots);
        }
        current.grid_points = 2 * (current.grid_points - 1) + 1;
    }
    unreachable!("loop returns on the last attempt")
}

/// Roots of a right-continuous, non-decreasing step function `count`: every
/// point where it increases by one is a root (a jump by k yields k roots at
/// the same location). Each jump is isolated by bisection to machine
/// precision.
pub fn solve_step_count<C: Fn(f64) -> i64>(count: C, interval: (f64, f64), opts: &SolverOptions) -> Result<Vec<f64>> {
    opts.validate()?;
    let (lo, hi) = interval;
    let c_lo = count(lo);
    let c_hi = count(hi);
    if c_hi < c_lo {
        return Err(Error::SolverBudgetExceeded(format!(
            "counting function decreased across the interval ({c_lo} -> {c_hi})"
        )));
    }
    let mut roots = Vec::with_capacity((c_hi - c_lo) as usize);
    let mut left = lo;
    for k in (c_lo + 1)..=c_hi {
        // invariant: count(a) < k <= count(b)
        let (mut a, mut b) = (left, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count(mid) >= k {
                b = mid;
            } else {
                a = mid;
            }
        }
        roots.push(b);
        left = a;
    }
    Ok(roots)
}

/// Points where a continuous non-decreasing `phase` crosses an integer
/// multiple of `step`, found by bisection.
pub fn solve_level_crossings<P: Fn(f64) -> f64>(
    phase: P,
    interval: (f64, f64),
    step: f64,
    opts: &SolverOptions,
) -> Result<Vec<f64>> {
    opts.validate()?;
    let (lo, hi) = interval;
    let p_lo = phase(lo) / step;
    let p_hi = phase(hi) / step;
    if !(p_lo.is_finite() && p_hi.is_finite()) || p_hi < p_lo {
        return Err(Error::SolverBudgetExceeded(format!(
            "phase is not monotone over the interval ({p_lo} -> {p_hi} in units of the step)"
        )));
    }
    let first = (p_lo.floor() as i64) + 1;
    let last = if p_hi == p_hi.floor() {
        p_hi as i64 - 1
    } else {
        p_hi.floor() as i64
    };
    let mut roots = Vec::new();
    let mut left = lo;
    for k in first..=last {
        let target = k as f64 * step;
        let (mut a, mut b) = (left, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if phase(mid) >= target {
                b = mid;
            } else {
                a = mid;
            }
        }
        let root = if (phase(a) - target).abs() <= (phase(b) - target).abs() {
            a
        } else {
            b
        };
        roots.push(root);
        left = a;
    }
    Ok(roots)
}
