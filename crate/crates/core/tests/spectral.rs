//! Eigenstructure: associated-polynomial identities of the reordered blocks,
//! characteristic polynomial factorizations, analytic vs numeric spectra,
//! and the degenerate `α₁ = 0` corner.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swme::legendre::{
    gauss_legendre_nodes, gauss_lobatto_interior_nodes, legendre_deriv_eval, legendre_eval,
};
use swme::model::{
    assemble_matrices, constants_for, reorder, ModelVariant, PrimitiveState,
};
use swme::sampling::{corner_state, random_state};
use swme::spectral::{
    analytic_eigenvalues, assoc_eval, associated_polynomials, certify_hyperbolicity,
    char_poly_hessenberg, numeric_eigen, poly_eval, poly_roots, HessenbergView, Hyperbolicity,
};

fn state(n: usize, h: f64, u: f64, a1: f64) -> PrimitiveState {
    let mut s = PrimitiveState::lake_at_rest(h, n, 1.0);
    s.um = u;
    s.alpha[0] = a1;
    s
}

/// The reordered blocks of a variant's x matrix: `Ã₁₁` is the leading
/// `(N+2)²` block, `Ã₂₂` the trailing `(N+1)²`.
fn w_blocks(v: &PrimitiveState, variant: &ModelVariant) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = constants_for(v.order());
    let (a, _) = assemble_matrices(v, variant, &k).unwrap();
    let w = reorder(&a).entries;
    let n = v.order();
    (
        w.view((0, 0), (n + 2, n + 2)).into_owned(),
        w.view((n + 2, n + 2), (n + 1, n + 1)).into_owned(),
    )
}

fn double_factorial_odd(n: usize) -> f64 {
    // (2n+1)!! = 1·3·5⋯(2n+1)
    (0..=n).map(|k| (2 * k + 1) as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Chebyshev sample points in the eigenvalue range, per the factorization
/// checks: both sides evaluated, relative error bounded.
fn sample_points(count: usize, um: f64, radius: f64) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let t = std::f64::consts::PI * (i as f64 + 0.5) / count as f64;
            um + radius * t.cos()
        })
        .collect()
}

#[test]
fn a22_associated_polynomials_are_scaled_legendre() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [2usize, 4, 7] {
        let um = rng.random_range(-1.0..1.0);
        let a1 = 0.8;
        let v = state(n, 1.3, um, a1);
        let (_, a22) = w_blocks(&v, &ModelVariant::Hswme);
        let h = HessenbergView::new(a22).unwrap();
        for x in sample_points(9, um, 2.0) {
            let xi = (x - um) / a1;
            let vals = assoc_eval(&h, x).unwrap();
            for (j, got) in vals.iter().enumerate().take(n + 1) {
                let expect = (2 * j + 1) as f64 * legendre_eval(j, xi);
                assert!(
                    (got - expect).abs() <= 1e-11 * (1.0 + expect.abs()),
                    "n={n} j={j}"
                );
            }
            // q_{N+1} = (N+1) α₁ P_{N+1}(ξ)
            let expect = (n + 1) as f64 * a1 * legendre_eval(n + 1, xi);
            assert!((vals[n + 1] - expect).abs() <= 1e-11 * (1.0 + expect.abs()));
        }
    }
}

#[test]
fn a11_low_order_associated_polynomials() {
    let (um, a1, gh) = (0.4, 0.9, 1.3);
    let v = state(3, gh, um, a1);
    let (a11, _) = w_blocks(&v, &ModelVariant::Hswme);
    let h = HessenbergView::new(a11).unwrap();
    let seq = associated_polynomials(&h).unwrap();
    for x in sample_points(7, um, 2.0) {
        // q_1 = x, q_2 = (3(x-u)² - 3gh + α₁²)/(2α₁)
        assert!((poly_eval(&seq.polys[1], x) - x).abs() < 1e-12);
        let q2 = (3.0 * (x - um).powi(2) - 3.0 * gh + a1 * a1) / (2.0 * a1);
        assert!((poly_eval(&seq.polys[2], x) - q2).abs() < 1e-11);
    }
}

/// `det(xI - Ã₁₁) = N!/(2N+1)!! · α₁^N · P'_{N+1}(ξ) · ((x-u)² - gh - α₁²)`.
#[test]
fn a11_characteristic_polynomial_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 1..=10usize {
        for &a1 in &[1.0, -1.0, 0.1, -0.1] {
            let um = rng.random_range(-2.0..2.0);
            let gh = rng.random_range(0.5..4.0);
            let v = state(n, gh, um, a1);
            let (a11, _) = w_blocks(&v, &ModelVariant::Hswme);
            let h = HessenbergView::new(a11).unwrap();
            let prefactor = factorial(n) / double_factorial_odd(n) * a1.powi(n as i32);
            for x in sample_points(4 * n + 8, um, 2.0 + gh.sqrt()) {
                let xi = (x - um) / a1;
                let pg = (x - um).powi(2) - gh - a1 * a1;
                let expect = prefactor * legendre_deriv_eval(n + 1, xi) * pg;
                let got = h.superdiag_product() * assoc_eval(&h, x).unwrap()[n + 2];
                assert!(
                    (got - expect).abs() <= 1e-9 * (1.0 + expect.abs()),
                    "n={n} a1={a1} x={x}: {got} vs {expect}"
                );
            }
        }
    }
}

/// `det(xI - Ã₂₂) = (N+1)!/(2N+1)!! · α₁^{N+1} · P_{N+1}(ξ)`.
#[test]
fn a22_characteristic_polynomial_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 1..=10usize {
        for &a1 in &[1.0, -1.0, 0.1, -0.1] {
            let um = rng.random_range(-2.0..2.0);
            let v = state(n, 1.0, um, a1);
            let (_, a22) = w_blocks(&v, &ModelVariant::Hswme);
            let h = HessenbergView::new(a22).unwrap();
            let prefactor = factorial(n + 1) / double_factorial_odd(n) * a1.powi(n as i32 + 1);
            for x in sample_points(4 * n + 8, um, 2.0) {
                let xi = (x - um) / a1;
                let expect = prefactor * legendre_eval(n + 1, xi);
                let got = h.superdiag_product() * assoc_eval(&h, x).unwrap()[n + 1];
                assert!(
                    (got - expect).abs() <= 1e-9 * (1.0 + expect.abs()),
                    "n={n} a1={a1}"
                );
            }
        }
    }
}

/// β closure: `det(xI - Ã_{β,11}) = N!/(2N-1)!! · α₁^N · P_N(ξ) · p_g(x)`.
#[test]
fn beta_a11_characteristic_polynomial_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 1..=10usize {
        for &a1 in &[1.0, -1.0, 0.1, -0.1] {
            let um = rng.random_range(-2.0..2.0);
            let gh = rng.random_range(0.5..4.0);
            let v = state(n, gh, um, a1);
            let (a11, _) = w_blocks(&v, &ModelVariant::BetaHswme);
            let h = HessenbergView::new(a11).unwrap();
            let dfo = if n == 0 { 1.0 } else { double_factorial_odd(n - 1) };
            let prefactor = factorial(n) / dfo * a1.powi(n as i32);
            for x in sample_points(4 * n + 8, um, 2.0 + gh.sqrt()) {
                let xi = (x - um) / a1;
                let pg = (x - um).powi(2) - gh - a1 * a1;
                let expect = prefactor * legendre_eval(n, xi) * pg;
                let got = h.superdiag_product() * assoc_eval(&h, x).unwrap()[n + 2];
                assert!(
                    (got - expect).abs() <= 1e-9 * (1.0 + expect.abs()),
                    "n={n} a1={a1} x={x}: {got} vs {expect}"
                );
            }
        }
    }
}

/// The worked closure's retuned `Ã₂₂`:
/// `det = N!(N+1)/((2N+1)!!(2N+3)) · α₁^{N+1} · P'_{N+2}(ξ)`,
/// so its eigenvalues sit at `u_m + t_i α₁` over the roots of `P'_{N+2}`.
#[test]
fn example_a22_factorization_and_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in 2..=10usize {
        let um = rng.random_range(-2.0..2.0);
        let a1 = if n % 2 == 0 { 1.0 } else { -0.7 };
        let v = state(n, 1.2, um, a1);
        let (_, a22) = w_blocks(&v, &ModelVariant::GeneralClosureExample);
        let h = HessenbergView::new(a22.clone()).unwrap();
        let prefactor = factorial(n) * (n + 1) as f64
            / (double_factorial_odd(n) * (2 * n + 3) as f64)
            * a1.powi(n as i32 + 1);
        for x in sample_points(4 * n + 8, um, 2.0) {
            let xi = (x - um) / a1;
            let expect = prefactor * legendre_deriv_eval(n + 2, xi);
            let got = h.superdiag_product() * assoc_eval(&h, x).unwrap()[n + 1];
            assert!(
                (got - expect).abs() <= 1e-9 * (1.0 + expect.abs()),
                "n={n} x={x}"
            );
        }
        // Dense eigensolver cross-check against the Lobatto nodes of order N+2.
        let eig = numeric_eigen(&a22).unwrap();
        let mut expected: Vec<f64> = gauss_lobatto_interior_nodes(n + 2)
            .into_iter()
            .map(|t| um + t * a1)
            .collect();
        expected.sort_by(|p, q| p.partial_cmp(q).unwrap());
        for (got, want) in eig.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() <= 1e-9, "n={n}: {got} vs {want}");
        }
    }
}

/// Full product for the HSWME x matrix with the
/// `N!(N+1)!/((2N+1)!!)²` prefactor.
#[test]
fn full_characteristic_polynomial_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for n in 1..=8usize {
        let um = rng.random_range(-2.0..2.0);
        let gh = rng.random_range(0.5..4.0);
        let a1 = *[1.0, -1.0, 0.1, -0.1].iter().nth(n % 4).unwrap();
        let v = state(n, gh, um, a1);
        let k = constants_for(n);
        let (a, _) = assemble_matrices(&v, &ModelVariant::Hswme, &k).unwrap();
        let prefactor = factorial(n) * factorial(n + 1) / double_factorial_odd(n).powi(2)
            * a1.powi(2 * n as i32 + 1);
        // det(xI - A) from the numeric spectrum (the matrix is not
        // Hessenberg in the interleaved ordering).
        let eig = numeric_eigen(&a.entries).unwrap();
        for x in sample_points(4 * n + 8, um, 2.5 + gh.sqrt()) {
            let xi = (x - um) / a1;
            let pg = (x - um).powi(2) - gh - a1 * a1;
            let expect = prefactor
                * legendre_deriv_eval(n + 1, xi)
                * legendre_eval(n + 1, xi)
                * pg;
            let got: f64 = eig.eigenvalues.iter().map(|l| x - l).product();
            assert!(
                (got - expect).abs() <= 1e-7 * (1.0 + expect.abs()),
                "n={n} x={x}: {got} vs {expect}"
            );
        }
    }
}

/// Dense characteristic polynomial by Faddeev–LeVerrier — the independent
/// oracle for the Hessenberg route.
fn faddeev_leverrier(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut work = DMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        work = m * (work + DMatrix::identity(n, n) * coeffs[n - k + 1]);
        coeffs[n - k] = -work.trace() / k as f64;
    }
    coeffs
}

fn random_unreduced_hessenberg(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |r, c| {
        if c > r + 1 {
            0.0
        } else if c == r + 1 {
            let mag: f64 = rng.random_range(0.3..2.0);
            if rng.random_bool(0.5) {
                mag
            } else {
                -mag
            }
        } else {
            rng.random_range(-1.0..1.0)
        }
    })
}

#[test]
fn hessenberg_char_poly_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.random_range(2..=6);
        let m = random_unreduced_hessenberg(&mut rng, n);
        let h = HessenbergView::new(m.clone()).unwrap();
        let cp = match char_poly_hessenberg(&h) {
            Ok(cp) => cp,
            Err(_) => continue, // clustered roots: identity not certified
        };
        let dense = faddeev_leverrier(&m);
        let scale = dense.iter().map(|c| c.abs()).fold(1.0, f64::max);
        for (a, b) in cp.iter().zip(&dense) {
            assert!((a - b).abs() <= 1e-9 * scale, "n={n}: {a} vs {b}");
        }
        checked += 1;
    }
}

#[test]
fn analytic_matches_numeric_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    for n in 1..=10usize {
        let k = constants_for(n);
        for variant in [
            ModelVariant::Hswme,
            ModelVariant::BetaHswme,
            ModelVariant::GeneralClosureExample,
        ] {
            for &a1 in &[1.0, -1.0, 0.1, -0.1] {
                let mut v = random_state(&mut rng, n);
                v.alpha[0] = a1;
                let analytic = analytic_eigenvalues(&variant, &v).unwrap();
                let (a, _) = assemble_matrices(&v, &variant, &k).unwrap();
                let numeric = numeric_eigen(&a.entries).unwrap();
                assert_eq!(analytic.len(), 2 * n + 3);
                for (x, y) in analytic.iter().zip(&numeric.eigenvalues) {
                    assert!(
                        (x - y).abs() <= 1e-9 * (1.0 + numeric.spectral_radius),
                        "{} n={n} a1={a1}: {x} vs {y}",
                        variant.name()
                    );
                }
            }
        }
    }
    // Galilean shift: adding c to u_m shifts the spectrum by c.
    let n = 4;
    let mut v = random_state(&mut rng, n);
    v.alpha[0] = 0.6;
    let base = analytic_eigenvalues(&ModelVariant::Hswme, &v).unwrap();
    v.um += 2.5;
    let shifted = analytic_eigenvalues(&ModelVariant::Hswme, &v).unwrap();
    for (x, y) in base.iter().zip(&shifted) {
        assert!((x + 2.5 - y).abs() < 1e-12);
    }
}

#[test]
fn analytic_example_order_one() {
    // HSWME, N = 1, u = 0, α₁ = 1, gh = 1: eigenvalues -√2, -1/√3, 0, 1/√3, √2.
    let v = state(1, 1.0, 0.0, 1.0);
    let eig = analytic_eigenvalues(&ModelVariant::Hswme, &v).unwrap();
    let expect = [
        -(2.0f64).sqrt(),
        -(1.0f64 / 3.0).sqrt(),
        0.0,
        (1.0f64 / 3.0).sqrt(),
        (2.0f64).sqrt(),
    ];
    for (x, y) in eig.iter().zip(&expect) {
        assert!((x - y).abs() < 1e-14);
    }
    // Unavailable for the raw SWME at N ≥ 2 and the globally hyperbolic
    // closure.
    let v2 = state(2, 1.0, 0.0, 1.0);
    assert!(analytic_eigenvalues(&ModelVariant::Swme, &v2).is_none());
    assert!(analytic_eigenvalues(&ModelVariant::GloballyHyperbolic, &v2).is_none());
}

#[test]
fn degenerate_corner_spectrum() {
    // α₁ = 0: u ± √(gh) plus u with multiplicity 2N+1.
    for n in [2usize, 5] {
        let mut v = state(n, 1.0, 0.3, 0.0);
        v.beta[0] = 0.5;
        let eig = analytic_eigenvalues(&ModelVariant::Hswme, &v).unwrap();
        assert!((eig[0] - (0.3 - 1.0)).abs() < 1e-14);
        assert!((eig[2 * n + 2] - 1.3).abs() < 1e-14);
        for e in &eig[1..2 * n + 2] {
            assert_eq!(*e, 0.3);
        }
    }
}

/// At `α₁ = 0, β₁ ≠ 0` the eigenvalue `u_m` has geometric multiplicity
/// `N + 1` (algebraic `2N + 1`), and its eigenvectors vanish on the whole
/// first block of the reordered variables. With `β₁ = 0` the eigenspace is
/// complete.
#[test]
fn weak_hyperbolicity_corner_eigenspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in [2usize, 3, 5] {
        let k = constants_for(n);
        let v = corner_state(&mut rng, n, 0.5);
        let (a, _) = assemble_matrices(&v, &ModelVariant::Hswme, &k).unwrap();
        let eig = numeric_eigen(&a.entries).unwrap();
        let um_cluster = eig
            .clusters
            .iter()
            .find(|c| c.algebraic == 2 * n + 1)
            .expect("u_m cluster");
        assert!((um_cluster.value - v.um).abs() < 1e-9);
        assert_eq!(um_cluster.geometric, n + 1, "n={n}");

        // Null-space structure in the reordered variables: block-1
        // coordinates vanish.
        let w = reorder(&a).entries;
        let size = 2 * n + 3;
        let shifted = &w - DMatrix::identity(size, size) * v.um;
        let svd = nalgebra::linalg::SVD::new(shifted, true, true);
        let v_t = svd.v_t.unwrap();
        let tol = 1e-7 * (1.0 + eig.spectral_radius);
        let mut null_count = 0;
        for (i, sv) in svd.singular_values.iter().enumerate() {
            if *sv < tol {
                null_count += 1;
                let vec = v_t.row(i);
                for c in 0..n + 2 {
                    assert!(vec[c].abs() < 1e-7, "n={n} block-1 coord {c}");
                }
            }
        }
        assert_eq!(null_count, n + 1);

        // β₁ = 0 restores a complete eigenspace of dimension 2N+1.
        let v0 = corner_state(&mut rng, n, 0.0);
        let (a0, _) = assemble_matrices(&v0, &ModelVariant::Hswme, &k).unwrap();
        let eig0 = numeric_eigen(&a0.entries).unwrap();
        let cluster = eig0
            .clusters
            .iter()
            .find(|c| c.algebraic == 2 * n + 1)
            .unwrap();
        assert_eq!(cluster.geometric, 2 * n + 1);
    }
}

/// The retuned `Ã₂₂` of the globally hyperbolic closure is tridiagonal with
/// same-sign off-diagonal pairs, hence similar to a symmetric matrix.
#[test]
fn globally_hyperbolic_a22_sign_condition() {
    for n in [2usize, 5, 10, 40] {
        let v = state(n, 1.0, 0.2, 0.7);
        let (_, a22) = w_blocks(&v, &ModelVariant::GloballyHyperbolic);
        for r in 0..n {
            let prod = a22[(r, r + 1)] * a22[(r + 1, r)];
            assert!(prod > 0.0, "n={n} row {r}: product {prod}");
        }
    }
}

#[test]
fn certify_random_and_corner_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let n = 3;
    let k = constants_for(n);

    // Generic state: hyperbolic in every direction, and the invariance
    // shortcut holds.
    let v = random_state(&mut rng, n);
    let reports = certify_hyperbolicity(&v, &ModelVariant::Hswme, &k, 12).unwrap();
    assert_eq!(reports.len(), 12);
    for r in &reports {
        assert_eq!(r.classification, Hyperbolicity::Hyperbolic);
        assert!(r.rotation_consistency <= 1e-9 * (1.0 + r.analysis.spectral_radius));
    }

    // Corner α₁ = 0, β₁ = 0.5: weakly hyperbolic in the x direction for
    // HSWME, fixed by the globally hyperbolic closure.
    let corner = corner_state(&mut rng, n, 0.5);
    let weak = certify_hyperbolicity(&corner, &ModelVariant::Hswme, &k, 1).unwrap();
    assert_eq!(weak[0].classification, Hyperbolicity::WeaklyHyperbolic);
    let fixed = certify_hyperbolicity(&corner, &ModelVariant::GloballyHyperbolic, &k, 8).unwrap();
    for r in &fixed {
        assert_eq!(r.classification, Hyperbolicity::Hyperbolic);
    }

    // Reports render with one record per direction.
    let text = weak[0].render();
    assert!(text.contains("classification = weakly-hyperbolic"));
}

#[test]
fn poly_roots_of_companion() {
    // x² - 1
    let roots = poly_roots(&[-1.0, 0.0, 1.0]);
    let mut reals: Vec<f64> = roots.iter().map(|r| r.re).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((reals[0] + 1.0).abs() < 1e-12 && (reals[1] - 1.0).abs() < 1e-12);
}
