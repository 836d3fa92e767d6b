//! Eigenstructure and invariance certification for the moment models.
//!
//! Rotational invariance, `cosθ A(U) + sinθ B(U) = T⁻¹ A(TU) T`, reduces 2D
//! hyperbolicity to real diagonalizability of the x-direction matrix, so the
//! certifier couples three ingredients: the invariance residual, numeric
//! eigenvalue/eigenvector analysis, and the closed-form spectra available
//! for the linearized closures.

pub mod eigen;
pub mod hessenberg;

use nalgebra::DMatrix;
use thiserror::Error;

pub use eigen::{distinctness_tol, numeric_eigen, EigenAnalysis, EigenCluster};
pub use hessenberg::{
    assoc_eval, associated_polynomials, char_poly_hessenberg, infinity_norm, poly_eval,
    poly_roots, HessenbergView, PolySequence,
};

use crate::legendre::{gauss_legendre_nodes, gauss_lobatto_interior_nodes, MomentConstants};
use crate::model::{
    ncomp, MatrixAssembler, ModelError, ModelVariant, PrimitiveState,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not lower Hessenberg: nonzero entry at ({row}, {col})")]
    NotHessenberg { row: usize, col: usize },
    #[error("matrix is not unreduced (zero superdiagonal entry)")]
    NotUnreduced,
    #[error("roots of q_n cluster too tightly to certify simplicity")]
    SimplicityUnverifiable,
    #[error("eigenvalue iteration failed to converge")]
    ConvergenceFailure,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Hyperbolicity classification of one directional matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolicity {
    /// Real spectrum with complete eigenvector sets.
    Hyperbolic,
    /// Real spectrum, but some eigenspace is deficient.
    WeaklyHyperbolic,
    /// Complex eigenvalues detected.
    NonHyperbolic,
}

impl std::fmt::Display for Hyperbolicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hyperbolicity::Hyperbolic => "hyperbolic",
            Hyperbolicity::WeaklyHyperbolic => "weakly-hyperbolic",
            Hyperbolicity::NonHyperbolic => "non-hyperbolic",
        };
        f.write_str(s)
    }
}

pub fn classify(analysis: &EigenAnalysis) -> Hyperbolicity {
    if analysis.complex_detected {
        Hyperbolicity::NonHyperbolic
    } else if analysis.is_diagonalizable() {
        Hyperbolicity::Hyperbolic
    } else {
        Hyperbolicity::WeaklyHyperbolic
    }
}

/// Certification record for one propagation direction.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub direction: (f64, f64),
    pub analysis: EigenAnalysis,
    pub classification: Hyperbolicity,
    /// Deviation of the directional spectrum from the x-direction spectrum of
    /// the rotated state — the rotational-invariance shortcut.
    pub rotation_consistency: f64,
}

impl SpectralReport {
    /// One-record structured text rendering.
    pub fn render(&self) -> String {
        let eigs: Vec<String> = self.analysis.eigenvalues.iter().map(|v| format!("{v:.12e}")).collect();
        let mults: Vec<String> = self
            .analysis
            .clusters
            .iter()
            .map(|c| format!("{:.6e}:alg={},geo={}", c.value, c.algebraic, c.geometric))
            .collect();
        format!(
            "direction = ({:.12}, {:.12})\nclassification = {}\ncomplex_detected = {}\nmax_imag = {:.3e}\nmin_gap = {:.6e}\nrotation_consistency = {:.3e}\neigenvalues = [{}]\nmultiplicities = [{}]\n",
            self.direction.0,
            self.direction.1,
            self.classification,
            self.analysis.complex_detected,
            self.analysis.max_imag,
            self.analysis.min_gap,
            self.rotation_consistency,
            eigs.join(", "),
            mults.join(", "),
        )
    }
}

/// The block-diagonal rotation `T(θ) = diag(1, T₂, …, T₂)` acting on the
/// interleaved state, with `T₂ = [[cosθ, sinθ], [-sinθ, cosθ]]`.
pub fn rotation_matrix(theta: f64, n: usize) -> DMatrix<f64> {
    let m = ncomp(n);
    let (c, s) = (theta.cos(), theta.sin());
    let mut t = DMatrix::zeros(m, m);
    t[(0, 0)] = 1.0;
    for p in 0..n + 1 {
        let i = 2 * p + 1;
        t[(i, i)] = c;
        t[(i, i + 1)] = s;
        t[(i + 1, i)] = -s;
        t[(i + 1, i + 1)] = c;
    }
    t
}

/// `T(θ)U` expressed in primitive variables: `h` fixed, every component pair
/// rotated.
pub fn rotate_state(v: &PrimitiveState, theta: f64) -> PrimitiveState {
    let (c, s) = (theta.cos(), theta.sin());
    let mut out = v.clone();
    out.um = c * v.um + s * v.vm;
    out.vm = -s * v.um + c * v.vm;
    for i in 0..v.order() {
        out.alpha[i] = c * v.alpha[i] + s * v.beta[i];
        out.beta[i] = -s * v.alpha[i] + c * v.beta[i];
    }
    out
}

/// `T(θ)⁻¹ M T(θ)` exploiting the 2×2 block structure (`O(n²)`).
pub fn rotate_conjugate(m: &DMatrix<f64>, theta: f64) -> DMatrix<f64> {
    let size = m.nrows();
    let npairs = (size - 1) / 2;
    let (c, s) = (theta.cos(), theta.sin());
    // Y = T⁻¹ M  (row pairs), then Y T (column pairs).
    let mut y = DMatrix::zeros(size, size);
    y.row_mut(0).copy_from(&m.row(0));
    for p in 0..npairs {
        let (r1, r2) = (2 * p + 1, 2 * p + 2);
        for col in 0..size {
            y[(r1, col)] = c * m[(r1, col)] - s * m[(r2, col)];
            y[(r2, col)] = s * m[(r1, col)] + c * m[(r2, col)];
        }
    }
    let mut out = DMatrix::zeros(size, size);
    out.column_mut(0).copy_from(&y.column(0));
    for p in 0..npairs {
        let (c1, c2) = (2 * p + 1, 2 * p + 2);
        for row in 0..size {
            out[(row, c1)] = c * y[(row, c1)] - s * y[(row, c2)];
            out[(row, c2)] = s * y[(row, c1)] + c * y[(row, c2)];
        }
    }
    out
}

/// Residual of the invariance identity at one angle: the maximum of
/// `‖cosθ A + sinθ B - T⁻¹A(TU)T‖∞` and the companion
/// `‖-sinθ A + cosθ B - T⁻¹B(TU)T‖∞`.
pub fn invariance_residual(
    v: &PrimitiveState,
    variant: &ModelVariant,
    constants: &MomentConstants,
    theta: f64,
) -> Result<f64, ModelError> {
    let asm = MatrixAssembler::new(variant, v.order(), constants.clone())?;
    Ok(invariance_residual_with(&asm, v, theta))
}

/// Same, reusing a prebuilt assembler (for sweeps).
pub fn invariance_residual_with(asm: &MatrixAssembler, v: &PrimitiveState, theta: f64) -> f64 {
    let a = asm.matrix(v, crate::model::Direction::X);
    let b = asm.matrix(v, crate::model::Direction::Y);
    let rotated = rotate_state(v, theta);
    let a_rot = asm.matrix(&rotated, crate::model::Direction::X);
    let b_rot = asm.matrix(&rotated, crate::model::Direction::Y);
    let (c, s) = (theta.cos(), theta.sin());

    let lhs_a = &a * c + &b * s;
    let rhs_a = rotate_conjugate(&a_rot, theta);
    let res_a = infinity_norm(&(lhs_a - rhs_a));

    let lhs_b = &a * -s + &b * c;
    let rhs_b = rotate_conjugate(&b_rot, theta);
    let res_b = infinity_norm(&(lhs_b - rhs_b));

    res_a.max(res_b)
}

/// Closed-form x-direction spectrum, where the closure provides one:
///
/// * HSWME, `α₁ ≠ 0`: `u_m ± √(gh+α₁²)`, `u_m + r_i α₁` over roots of
///   `P'_{N+1}`, `u_m + s_i α₁` over roots of `P_{N+1}`;
/// * β-HSWME swaps the `P'_{N+1}` family for roots of `P_N`;
/// * the worked general closure uses roots of `P'_{N+1}` and `P'_{N+2}`;
/// * `α₁ = 0` (all three): `u_m ± √(gh)` and `u_m` with multiplicity `2N+1`.
///
/// Returns `None` for the raw SWME (`N ≥ 2`) and the globally hyperbolic
/// closure, whose spectra have no closed form.
pub fn analytic_eigenvalues(variant: &ModelVariant, v: &PrimitiveState) -> Option<Vec<f64>> {
    let n = v.order();
    let kind = match variant {
        ModelVariant::Hswme => 0u8,
        ModelVariant::BetaHswme => 1,
        ModelVariant::GeneralClosureExample => 2,
        // All closures coincide at order one.
        ModelVariant::Swme | ModelVariant::GloballyHyperbolic if n == 1 => 0,
        _ => return None,
    };
    let kind = if n == 1 { 0 } else { kind };
    let (um, a1, gh) = (v.um, v.alpha1(), v.g * v.h);
    let mut eigs = Vec::with_capacity(ncomp(n));
    if a1 == 0.0 {
        let c = gh.sqrt();
        eigs.push(um - c);
        eigs.push(um + c);
        eigs.extend(std::iter::repeat_n(um, 2 * n + 1));
    } else {
        let c = (gh + a1 * a1).sqrt();
        eigs.push(um - c);
        eigs.push(um + c);
        let (block1, block2): (Vec<f64>, Vec<f64>) = match kind {
            0 => (gauss_lobatto_interior_nodes(n + 1), gauss_legendre_nodes(n + 1)),
            1 => (gauss_legendre_nodes(n), gauss_legendre_nodes(n + 1)),
            _ => (gauss_lobatto_interior_nodes(n + 1), gauss_lobatto_interior_nodes(n + 2)),
        };
        for r in block1.into_iter().chain(block2) {
            eigs.push(um + r * a1);
        }
    }
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(eigs)
}

/// Classify `cosθ·A + sinθ·B` over a fan of directions
/// `θ_k = 2πk/n_directions`, checking per direction that the spectrum
/// matches the x-direction spectrum of the rotated state (the invariance
/// shortcut that makes 1D analysis sufficient).
pub fn certify_hyperbolicity(
    v: &PrimitiveState,
    variant: &ModelVariant,
    constants: &MomentConstants,
    n_directions: usize,
) -> Result<Vec<SpectralReport>, SpectralError> {
    let asm = MatrixAssembler::new(variant, v.order(), constants.clone())?;
    let a = asm.matrix(v, crate::model::Direction::X);
    let b = asm.matrix(v, crate::model::Direction::Y);
    let mut reports = Vec::with_capacity(n_directions);
    for k in 0..n_directions {
        let theta = std::f64::consts::TAU * k as f64 / n_directions as f64;
        let (c, s) = (theta.cos(), theta.sin());
        let m = &a * c + &b * s;
        let analysis = numeric_eigen(&m)?;

        let rotated = rotate_state(v, theta);
        let a_rot = asm.matrix(&rotated, crate::model::Direction::X);
        let rot_analysis = numeric_eigen(&a_rot)?;
        let rotation_consistency = analysis
            .eigenvalues
            .iter()
            .zip(&rot_analysis.eigenvalues)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);

        reports.push(SpectralReport {
            direction: (c, s),
            classification: classify(&analysis),
            analysis,
            rotation_consistency,
        });
    }
    Ok(reports)
}
