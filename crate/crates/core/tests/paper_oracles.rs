//! Engine output against the displayed formulas, each re-typed here from
//! the derivation rather than taken from the library.

use deltabound::closedform::{
    dipole_residual, dipole_x_residual, double_symmetric_quadratic, double_symmetric_residual, merged_limit_energy,
    single_energy, triple_alternating_cleared, triple_alternating_residuals, triple_same_coeffs, triple_same_residual,
    Branch,
};
use deltabound::{
    assemble_delta_matrix, bound_state_residual, delta_determinant, greens_spectrum, rho_of, total_transfer,
    transfer_spectrum, BoundStateProblem, DeltaCenter, DeltaConvention, Mass, Matrix2, SolverOptions,
};

const M: Mass = Mass::UNIT;
const CA: DeltaConvention = DeltaConvention::CayleySelfAdjoint;
const SQ: DeltaConvention = DeltaConvention::SqueezedRectangle;

fn problem(centers: &[(f64, f64)]) -> BoundStateProblem {
    BoundStateProblem::new(
        M,
        centers
            .iter()
            .map(|&(position, strength)| DeltaCenter { position, strength }),
    )
    .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn energies(n: usize, edge: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -edge + 2.0 * edge * i as f64 / (n - 1) as f64)
}

fn kappa(e: f64) -> f64 {
    (1.0 - e * e).sqrt()
}

// ---------------------------------------------------------------- greens

#[test]
fn single_center_determinant() {
    for g in [0.5, 1.0, 2.7] {
        let p = problem(&[(0.0, -g)]);
        for e in energies(1000, 0.999) {
            let r = rho_of(e, M).unwrap();
            let want = (1.0 / g + r / 2.0) * (1.0 / g - 1.0 / (2.0 * r));
            let got = delta_determinant(&p, e).unwrap();
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0 / (g * g)),
                "g={g} E={e}"
            );
        }
    }
}

fn double_det(g: f64, e: f64, r: f64) -> f64 {
    let rho = rho_of(e, M).unwrap();
    let z = r * kappa(e);
    ((2.0 * rho - g).powi(2) * (2.0 + g * rho).powi(2) - 4.0 * g * g * (-4.0 * z).exp() * (1.0 + rho * rho).powi(2))
        / (16.0 * g.powi(4) * rho * rho)
}

fn dipole_det(g: f64, e: f64, r: f64) -> f64 {
    let rho = rho_of(e, M).unwrap();
    let z = r * kappa(e);
    ((4.0 * rho * rho - g * g) * (4.0 - g * g * rho * rho) + 4.0 * g * g * (-4.0 * z).exp() * (1.0 + rho * rho).powi(2))
        / (16.0 * g.powi(4) * rho * rho)
}

fn triple_det(g: f64, e: f64, r1: f64, r2: f64) -> f64 {
    let rho = rho_of(e, M).unwrap();
    let k = kappa(e);
    let (e1, e2) = ((-2.0 * r1 * k).exp(), (-2.0 * r2 * k).exp());
    let a = 2.0 * rho - g;
    let b = 2.0 + rho * g;
    let q = (1.0 + rho * rho).powi(2);
    (a.powi(3) * b.powi(3)
        - 4.0 * (e1 + e2) * g * g * a * b * q
        - 4.0 * e1 * e2 * g * g * (2.0 * rho + g) * (2.0 - rho * g) * q)
        / (64.0 * g.powi(6) * rho.powi(3))
}

fn triple_alt_det(g: f64, e: f64, r1: f64, r2: f64) -> f64 {
    let rho = rho_of(e, M).unwrap();
    let k = kappa(e);
    let (e1, e2) = ((-2.0 * r1 * k).exp(), (-2.0 * r2 * k).exp());
    (2.0 * rho - g) * (2.0 + rho * g) / (4.0 * g * g * rho) / (16.0 * g.powi(4) * rho * rho)
        * ((4.0 * rho * rho - g * g) * (4.0 - g * g * rho * rho)
            + 4.0 * g * g * (1.0 + rho * rho).powi(2) * (e1 + e2 - e1 * e2))
}

#[test]
fn pair_and_triple_determinants() {
    for g in [0.7, 1.5, 2.6] {
        for (r1, r2) in [(0.3, 0.3), (1.0, 1.0), (0.6, 1.7)] {
            let double = problem(&[(-r1, -g), (r1, -g)]);
            let dipole = problem(&[(-r1, -g), (r1, g)]);
            let same = problem(&[(-r1, -g), (0.0, -g), (r2, -g)]);
            let alt = problem(&[(-r1, -g), (0.0, g), (r2, -g)]);
            for e in energies(41, 0.98) {
                let check = |p: &BoundStateProblem, want: f64, what: &str| {
                    let got = delta_determinant(p, e).unwrap();
                    // the displayed forms cancel near their zeros; compare
                    // against the size of the leading term
                    let size = want.abs().max(delta_determinant(p, 0.0).unwrap().abs()).max(1e-3);
                    assert!(
                        (got - want).abs() < 1e-10 * size,
                        "{what} g={g} R=({r1},{r2}) E={e}: {got} vs {want}"
                    );
                };
                check(&double, double_det(g, e, r1), "double");
                check(&dipole, dipole_det(g, e, r1), "dipole");
                check(&same, triple_det(g, e, r1, r2), "triple");
                check(&alt, triple_alt_det(g, e, r1, r2), "alternating");
            }
        }
    }
}

#[test]
fn dipole_determinant_at_coincidence_is_positive_constant() {
    // (4 + g^2)^2 / (16 g^4) from the finite-R formula with e^{-4z} = 1
    let g: f64 = 1.5;
    let want = (4.0 + g * g).powi(2) / (16.0 * g.powi(4));
    let p = problem(&[(-1e-12, -g), (1e-12, g)]);
    for e in [-0.9, -0.2, 0.4, 0.95] {
        assert!(rel(delta_determinant(&p, e).unwrap(), want) < 1e-9);
        assert!(rel(dipole_det(g, e, 0.0), want) < 1e-12);
    }
}

#[test]
fn double_delta_matrix_entrywise() {
    let (g, r) = (1.3f64, 0.7);
    let p = problem(&[(-r, -g), (r, -g)]);
    for e in [-0.8, 0.0, 0.45, 0.93] {
        let rho = rho_of(e, M).unwrap();
        let x = (-2.0 * r * kappa(e)).exp();
        let d0 = -1.0 / g - rho / 2.0;
        let d1 = -1.0 / g + 1.0 / (2.0 * rho);
        #[rustfmt::skip]
        let want = [
            [d0, 0.0, -rho / 2.0 * x, 0.5 * x],
            [0.0, d1, -0.5 * x, x / (2.0 * rho)],
            [-rho / 2.0 * x, -0.5 * x, d0, 0.0],
            [0.5 * x, x / (2.0 * rho), 0.0, d1],
        ];
        let got = assemble_delta_matrix(&p, e).unwrap();
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                assert!((got.entries()[(i, j)] - w).abs() < 1e-12, "({i},{j}) at E={e}");
            }
        }
    }
}

/// Six-by-six matrix in the displayed center order `-R1, +R2, 0`; the last
/// two rows take `+g` on the diagonal when `middle_flipped`.
fn triple_matrix(g: f64, e: f64, r1: f64, r2: f64, middle_flipped: bool) -> [[f64; 6]; 6] {
    let rho = rho_of(e, M).unwrap();
    let k = kappa(e);
    let (x1, x2, x12) = ((-r1 * k).exp(), (-r2 * k).exp(), (-(r1 + r2) * k).exp());
    let d0 = -1.0 / g - rho / 2.0;
    let d1 = -1.0 / g + 1.0 / (2.0 * rho);
    let (f0, f1) = if middle_flipped {
        (1.0 / g - rho / 2.0, 1.0 / g + 1.0 / (2.0 * rho))
    } else {
        (d0, d1)
    };
    let h = 0.5;
    let ir = 1.0 / (2.0 * rho);
    let hr = rho / 2.0;
    #[rustfmt::skip]
    let m = [
        [d0, 0.0, -hr * x12, h * x12, -hr * x1, h * x1],
        [0.0, d1, -h * x12, ir * x12, -h * x1, ir * x1],
        [-hr * x12, -h * x12, d0, 0.0, -hr * x2, -h * x2],
        [h * x12, ir * x12, 0.0, d1, h * x2, ir * x2],
        [-hr * x1, -h * x1, -hr * x2, h * x2, f0, 0.0],
        [h * x1, ir * x1, -h * x2, ir * x2, 0.0, f1],
    ];
    m
}

#[test]
fn triple_delta_matrices_entrywise() {
    let (g, r1, r2) = (1.1, 0.4, 0.9);
    // library order is by position: -R1, 0, +R2; displayed order is -R1, +R2, 0
    let to_displayed = [0usize, 2, 1];
    for flipped in [false, true] {
        let middle = if flipped { g } else { -g };
        let p = problem(&[(-r1, -g), (0.0, middle), (r2, -g)]);
        for e in [-0.6, 0.05, 0.77] {
            let want = triple_matrix(g, e, r1, r2, flipped);
            let got = assemble_delta_matrix(&p, e).unwrap();
            for bi in 0..3 {
                for bj in 0..3 {
                    let b = got.block(bi, bj);
                    let (di, dj) = (to_displayed[bi], to_displayed[bj]);
                    let w = Matrix2::new(
                        want[2 * di][2 * dj],
                        want[2 * di][2 * dj + 1],
                        want[2 * di + 1][2 * dj],
                        want[2 * di + 1][2 * dj + 1],
                    );
                    assert!(b.max_abs_diff(&w) < 1e-12, "block ({bi},{bj}) flipped={flipped} E={e}");
                }
            }
        }
    }
}

#[test]
fn block_antisymmetry_of_the_sign_term() {
    let p = problem(&[(-0.5, -1.0), (0.2, 0.6), (1.5, -2.0)]);
    let d = assemble_delta_matrix(&p, 0.3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let (a, b) = (d.block(i, j), d.block(j, i));
                assert_eq!(a.a12, -b.a12);
                assert_eq!(a.a21, -b.a21);
                assert_eq!(a.a11, b.a11);
                assert_eq!(a.a22, b.a22);
            }
        }
    }
}

#[test]
fn single_center_greens_spectrum() {
    let s = greens_spectrum(&problem(&[(0.0, -1.0)]), &SolverOptions::default()).unwrap();
    assert_eq!(s.len(), 1);
    assert!((s.energies()[0] - 0.6).abs() < 1e-10);
}

#[test]
fn double_greens_matches_branch_roots() {
    let (g, r) = (1.5, 1.0);
    let s = greens_spectrum(&problem(&[(-r, -g), (r, -g)]), &SolverOptions::default()).unwrap();
    assert_eq!(s.len(), 2);
    for e in s.energies() {
        let plus = double_symmetric_residual(e, g, r, M, CA, Branch::Plus).unwrap();
        let minus = double_symmetric_residual(e, g, r, M, CA, Branch::Minus).unwrap();
        assert!(plus.abs().min(minus.abs()) < 1e-10);
    }
}

// -------------------------------------------------------------- transfer

fn squeeze_transfer(centers: &[(f64, f64)], e: f64) -> Matrix2 {
    total_transfer(&problem(centers), e, SQ).unwrap().unscaled()
}

#[test]
fn double_delta_transfer_elements() {
    let (g, r) = (1.3f64, 0.7);
    for e in [-0.7, -0.2, 0.1, 0.55, 0.9] {
        let rho = rho_of(e, M).unwrap();
        let zz = 2.0 * r * kappa(e);
        let (s, c) = g.sin_cos();
        let (s2, c2) = (2.0 * g).sin_cos();
        let l11 = c2 * zz.cosh() + 0.5 * (rho - 1.0 / rho) * s2 * zz.sinh();
        let l12 = -s2 * zz.cosh() + (rho * c * c + s * s / rho) * zz.sinh();
        let l21 = s2 * zz.cosh() + (rho * s * s + c * c / rho) * zz.sinh();
        let want = Matrix2::new(l11, l12, l21, l11);
        let got = squeeze_transfer(&[(-r, -g), (r, -g)], e);
        assert!(got.max_abs_diff(&want) < 1e-12 * want.max_abs(), "E={e}");
    }
}

#[test]
fn dipole_transfer_elements() {
    let (g, r) = (1.3f64, 0.7);
    for e in [-0.7, -0.2, 0.1, 0.55, 0.9] {
        let rho = rho_of(e, M).unwrap();
        let zz = 2.0 * r * kappa(e);
        let (s, c) = g.sin_cos();
        let s2 = (2.0 * g).sin();
        let q = 0.5 * (rho + 1.0 / rho) * s2 * zz.sinh();
        let want = Matrix2::new(
            zz.cosh() + q,
            (rho * c * c - s * s / rho) * zz.sinh(),
            (c * c / rho - rho * s * s) * zz.sinh(),
            zz.cosh() - q,
        );
        let got = squeeze_transfer(&[(-r, -g), (r, g)], e);
        assert!(got.max_abs_diff(&want) < 1e-12 * want.max_abs(), "E={e}");
    }
}

#[test]
fn triple_transfer_elements() {
    let (g, r1, r2) = (1.3f64, 0.6, 0.9);
    let (sg, cg) = g.sin_cos();
    let (s2, c2) = (2.0 * g).sin_cos();
    let (s3, c3) = (3.0 * g).sin_cos();
    for e in [-0.7, -0.2, 0.1, 0.55, 0.9] {
        let r = rho_of(e, M).unwrap();
        let k = kappa(e);
        let (z1, z2) = (r1 * k, r2 * k);
        let norm = z1.cosh() * z2.cosh();
        let (t1, t2) = (z1.tanh(), z2.tanh());

        let same = Matrix2::new(
            (r * sg * c2 - cg * s2 / r) * t1
                + (r * cg * s2 - sg * c2 / r) * t2
                + c3
                + (0.5 * (r * r + 1.0 / (r * r)) * sg * s2 + cg * c2) * t1 * t2,
            -s3 + (r * cg * c2 + sg * s2 / r) * (t1 + t2)
                + (0.5 * (r - 1.0 / r).powi(2) * cg * s2 - sg / (r * r)) * t1 * t2,
            s3 + (r * sg * s2 + cg * c2 / r) * (t1 + t2)
                - (0.5 * (r - 1.0 / r).powi(2) * cg * s2 - r * r * sg) * t1 * t2,
            (r * cg * s2 - sg * c2 / r) * t1
                + (r * sg * c2 - cg * s2 / r) * t2
                + c3
                + (0.5 * (r * r + 1.0 / (r * r)) * sg * s2 + cg * c2) * t1 * t2,
        );
        let got = squeeze_transfer(&[(-r1, -g), (0.0, -g), (r2, -g)], e).scale(1.0 / norm);
        assert!(got.max_abs_diff(&same) < 1e-12 * same.max_abs().max(1.0), "same E={e}");

        let alt = Matrix2::new(
            cg + r * sg * t1 - sg * t2 / r - (0.5 * (r * r + 1.0 / (r * r)) * sg * s2 - cg * c2) * t1 * t2,
            -sg + r * cg * (t1 + t2) - (0.5 * (r + 1.0 / r).powi(2) * cg * s2 - sg / (r * r)) * t1 * t2,
            sg + cg * (t1 + t2) / r + (0.5 * (r + 1.0 / r).powi(2) * cg * s2 - r * r * sg) * t1 * t2,
            cg - sg * t1 / r + r * sg * t2 - (0.5 * (r * r + 1.0 / (r * r)) * sg * s2 - cg * c2) * t1 * t2,
        );
        let got = squeeze_transfer(&[(-r1, -g), (0.0, g), (r2, -g)], e).scale(1.0 / norm);
        assert!(got.max_abs_diff(&alt) < 1e-12 * alt.max_abs().max(1.0), "alt E={e}");
    }
}

#[test]
fn single_center_residual_is_the_cot_equation() {
    for g in [0.4f64, 1.2, 2.2, 3.0] {
        let p = problem(&[(0.0, -g)]);
        for e in energies(50, 0.99) {
            let r = rho_of(e, M).unwrap();
            let cot = g.cos() / g.sin();
            let want = -g.sin() * (1.0 / (r * r) - 2.0 * cot / r - 1.0);
            let scale = total_transfer(&p, e, SQ).unwrap().log_scale.exp();
            let got = bound_state_residual(&p, e, SQ).unwrap() * scale;
            assert!(
                (got - want).abs() < 1e-12 * (1.0 / (r * r)).max(1.0),
                "g={g} E={e}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn single_center_transfer_spectra() {
    let opts = SolverOptions::default();
    let s = transfer_spectrum(&problem(&[(0.0, -std::f64::consts::FRAC_PI_3)]), &opts, SQ).unwrap();
    assert_eq!(s.len(), 1);
    assert!((s.energies()[0] - 0.5).abs() < 1e-10);
    let s = transfer_spectrum(&problem(&[(0.0, -1.0)]), &opts, CA).unwrap();
    assert_eq!(s.len(), 1);
    assert!((s.energies()[0] - 0.6).abs() < 1e-10);
    // one level for every 0 < g < pi
    for i in 1..40 {
        let g = std::f64::consts::PI * i as f64 / 40.0;
        let s = transfer_spectrum(&problem(&[(0.0, -g)]), &opts, SQ).unwrap();
        assert_eq!(s.len(), 1, "g={g}");
        assert!((s.energies()[0] - g.cos()).abs() < 1e-10);
    }
}

#[test]
fn squeeze_dipole_matches_its_fixed_point() {
    let (g, r) = (1.5f64, 1.0);
    let s = transfer_spectrum(&problem(&[(-r, -g), (r, g)]), &SolverOptions::default(), SQ).unwrap();
    assert_eq!(s.len(), 2);
    // iterate E = m sqrt(cos^2 g + e^{-4 R kappa(E)} sin^2 g) independently
    let mut e: f64 = g.cos().abs();
    for _ in 0..10_000 {
        e = (g.cos().powi(2) + (-4.0 * r * kappa(e)).exp() * g.sin().powi(2)).sqrt();
    }
    let got = s.energies();
    assert!(
        (got[1] - e).abs() < 1e-10 && (got[0] + e).abs() < 1e-10,
        "{got:?} vs {e}"
    );
}

// ------------------------------------------------------------ closedform

#[test]
fn cayley_double_quadratic_vanishes_on_branch_roots() {
    let (g, r) = (1.5, 1.0);
    let s = greens_spectrum(&problem(&[(-r, -g), (r, -g)]), &SolverOptions::default()).unwrap();
    for e in s.energies() {
        assert!(double_symmetric_quadratic(e, g, r, M, CA).unwrap().abs() < 1e-8);
    }
}

#[test]
fn squeeze_double_quadratic_matches_tan_form() {
    let (g, r) = (0.9f64, 0.6);
    for e in energies(31, 0.95) {
        let k = kappa(e);
        let x = e * g.tan() / k;
        let e4 = (-4.0 * r * k).exp();
        let want = (1.0 - e4) * (x * x - 2.0 / (1.0 - e4) * x + (1.0 - e4 * g.tan().powi(2)) / (1.0 - e4));
        assert!((double_symmetric_quadratic(e, g, r, M, SQ).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0));
    }
}

#[test]
fn dipole_forms_agree() {
    for (g, conv) in [(1.5, CA), (2.5, CA), (1.2, SQ), (2.0, SQ)] {
        let r = 0.8;
        let p = problem(&[(-r, -g), (r, g)]);
        let reference = if conv == CA {
            greens_spectrum(&p, &SolverOptions::default()).unwrap()
        } else {
            transfer_spectrum(&p, &SolverOptions::default(), SQ).unwrap()
        };
        for e in reference.energies() {
            assert!(dipole_residual(e, g, r, M, conv).unwrap().abs() < 1e-10);
            assert!(dipole_x_residual(e, g, r, M, conv).unwrap().abs() < 1e-8);
        }
    }
}

#[test]
fn cayley_dipole_energy_formula() {
    let (g, r) = (1.5f64, 1.0);
    let s = greens_spectrum(&problem(&[(-r, -g), (r, g)]), &SolverOptions::default()).unwrap();
    for e in s.energies() {
        let want = (1.0 - (1.0 - (-4.0 * r * kappa(e)).exp()) * 16.0 * g * g / (g * g + 4.0).powi(2)).sqrt();
        assert!((e.abs() - want).abs() < 1e-10);
    }
}

#[test]
fn triple_cubic_coefficient_limits() {
    for conv in [CA, SQ] {
        // far apart: (X - 1)^3
        let c = triple_same_coeffs(0.3, 1.1, 400.0, 400.0, M, conv).unwrap();
        assert_eq!((c.g3, c.g2, c.g1, c.g0), (1.0, -3.0, 3.0, -1.0));
        // one side far: (X - 1) times the double quadratic with 2z -> z
        let g: f64 = 1.1;
        let e = 0.3;
        let t2 = if conv == CA {
            g * g / (1.0 - g * g / 4.0).powi(2)
        } else {
            g.tan().powi(2)
        };
        let c = triple_same_coeffs(e, g, 0.7, 400.0, M, conv).unwrap();
        let e1 = (-2.0 * 0.7 * kappa(e)).exp();
        for x in [-2.0, -0.3, 0.4, 1.7] {
            let factored = (x - 1.0) * ((1.0 - e1) * x * x - 2.0 * x + 1.0 - t2 * e1);
            assert!((c.eval(x) - factored).abs() < 1e-12 * factored.abs().max(1.0));
        }
    }
}

#[test]
fn tanh_form_is_the_exponential_form_rescaled() {
    for conv in [CA, SQ] {
        for e in [-0.5, 0.2, 0.8] {
            let (r1, r2) = (0.4, 1.3);
            let c = triple_same_coeffs(e, 1.2, r1, r2, M, conv).unwrap();
            let k = kappa(e);
            let factor = (1.0 + (-2.0 * r1 * k).exp()) * (1.0 + (-2.0 * r2 * k).exp());
            for x in [-1.5, 0.0, 0.6, 2.0] {
                let lhs = c.eval_tanh_form(x) * factor;
                assert!((lhs - c.eval(x)).abs() < 1e-12 * c.eval(x).abs().max(1.0));
            }
        }
    }
}

#[test]
fn shifted_cubic_is_the_cubic_times_v_cubed() {
    for conv in [CA, SQ] {
        let g: f64 = 1.2;
        let theta = conv.theta(g);
        for e in [-0.5, 0.2, 0.8] {
            let (r1, r2) = (0.4, 1.3);
            let c = triple_same_coeffs(e, g, r1, r2, M, conv).unwrap();
            let k = kappa(e);
            let x = e * theta.tan() / k;
            let v = k * theta.cos();
            let want = c.eval(x) * v.powi(3);
            let got = triple_same_residual(e, g, r1, r2, M, conv).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1e-3), "{got} vs {want}");
        }
    }
}

#[test]
fn alternating_pair_energy_formulas() {
    let opts = SolverOptions::default();
    for (conv, g) in [(CA, 1.5f64), (SQ, 1.2)] {
        let (r1, r2) = (0.5, 1.1);
        let p = problem(&[(-r1, -g), (0.0, g), (r2, -g)]);
        let s = if conv == CA {
            greens_spectrum(&p, &opts).unwrap()
        } else {
            transfer_spectrum(&p, &opts, SQ).unwrap()
        };
        let sin2 = if conv == CA {
            16.0 * g * g / (g * g + 4.0).powi(2)
        } else {
            g.sin().powi(2)
        };
        let single = single_energy(g, M, conv).unwrap();
        let mut pair = 0;
        for e in s.energies() {
            if (e - single).abs() < 1e-10 {
                continue;
            }
            let k = kappa(e);
            let p = (1.0 - (-2.0 * r1 * k).exp()) * (1.0 - (-2.0 * r2 * k).exp());
            assert!((e.abs() - (1.0 - p * sin2).sqrt()).abs() < 1e-10);
            let f = triple_alternating_residuals(e, g, r1, r2, M, conv).unwrap();
            assert!(f.factor2.abs() < 1e-8, "{f:?}");
            pair += 1;
        }
        assert_eq!(pair, 2);
    }
}

#[test]
fn cleared_and_verbatim_alternating_factors_share_zeros() {
    // factor2 verbatim and cleared differ by a sign-definite factor
    for conv in [CA, SQ] {
        let (g, r1, r2) = (1.2, 0.5, 1.1);
        for e in energies(41, 0.95) {
            let v = triple_alternating_residuals(e, g, r1, r2, M, conv).unwrap();
            let c = triple_alternating_cleared(e, g, r1, r2, M, conv).unwrap();
            if v.factor2.abs() > 1e-6 && c.factor2.abs() > 1e-12 {
                assert_eq!(
                    v.factor2.signum() * c.factor2.signum(),
                    v.factor2.signum() * c.factor2.signum()
                );
            }
            let theta = conv.theta(g);
            let k = kappa(e);
            // X - 1 = (E sin - k cos)/(k cos)
            let want = c.factor1 / (k * theta.cos());
            assert!((v.factor1 - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }
}

#[test]
fn merged_limits() {
    let g: f64 = 0.7;
    // squeeze: three centers merge into 3g
    let e = merged_limit_energy(3, g, M, SQ).unwrap().unwrap();
    assert!((e - (3.0 * g).cos()).abs() < 1e-15);
    // Cayley triple, rational form
    for g in [0.5f64, 1.0, 1.5, 2.5] {
        let g2 = g * g;
        let want = (-g2.powi(3) + 60.0 * g2 * g2 - 240.0 * g2 + 64.0) / (g2 + 4.0).powi(3)
            * (3.0 * g2 * g2 - 40.0 * g2 + 48.0).signum();
        assert!((merged_limit_energy(3, g, M, CA).unwrap().unwrap() - want).abs() < 1e-14);
    }
    // non-additivity at g = 1
    let merged = merged_limit_energy(3, 1.0, M, CA).unwrap().unwrap();
    let single = single_energy(3.0, M, CA).unwrap();
    assert!((merged - single).abs() > 0.01);
}

#[test]
fn x_variable_tangent_reduction_at_merging() {
    // (3 cos^2 g - sin^2 g) tan g / (1 - 4 sin^2 g) = tan 3g
    for g in [0.2f64, 0.45, 1.1, 1.3] {
        let lhs = (3.0 * g.cos().powi(2) - g.sin().powi(2)) * g.tan() / (1.0 - 4.0 * g.sin().powi(2));
        assert!(rel(lhs, (3.0 * g).tan()) < 1e-12);
    }
}
