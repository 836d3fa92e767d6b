//! Dense eigenvalue analysis: real-Schur eigenvalues, eigenvalue clustering,
//! and geometric multiplicities from rank-revealing QR.

use nalgebra::{Complex, DMatrix};

use super::hessenberg::infinity_norm;
use super::SpectralError;

/// Result of analyzing one matrix: eigenvalues clustered by the distinctness
/// tolerance, each with algebraic and geometric multiplicity.
#[derive(Debug, Clone)]
pub struct EigenAnalysis {
    /// All real parts, sorted ascending (present even if complex pairs were
    /// detected).
    pub eigenvalues: Vec<f64>,
    /// Largest imaginary part relative to scale, for complex detection.
    pub max_imag: f64,
    /// True if some eigenvalue has imaginary part above `1e-9·‖M‖∞`.
    pub complex_detected: bool,
    pub clusters: Vec<EigenCluster>,
    pub spectral_radius: f64,
    /// Smallest gap between neighboring clusters (`∞` with one cluster).
    pub min_gap: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct EigenCluster {
    pub value: f64,
    pub algebraic: usize,
    pub geometric: usize,
}

impl EigenAnalysis {
    /// Complete eigenvector sets everywhere?
    pub fn is_diagonalizable(&self) -> bool {
        !self.complex_detected && self.clusters.iter().all(|c| c.geometric == c.algebraic)
    }
}

/// Two eigenvalues are considered distinct when separated by more than
/// `1e-8·(1 + spectral radius)`.
pub fn distinctness_tol(spectral_radius: f64) -> f64 {
    1e-8 * (1.0 + spectral_radius)
}

/// Rank from column-pivoted QR: the number of `|R_ii|` above the tolerance.
/// Deterministic and scale-aware, which is what the multiplicity counts need.
fn qr_rank(m: &DMatrix<f64>, eps: f64) -> usize {
    let qr = m.clone().col_piv_qr();
    let r = qr.r();
    (0..r.nrows().min(r.ncols()))
        .filter(|&i| r[(i, i)].abs() > eps)
        .count()
}

/// Eigenvalues of a dense real matrix by the real Schur form, grouped into
/// clusters, with geometric multiplicity `n - rank(λI - M)` computed by
/// column-pivoted QR at tolerance `1e-9·‖M‖∞` for every repeated cluster.
pub fn numeric_eigen(m: &DMatrix<f64>) -> Result<EigenAnalysis, SpectralError> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "matrix must be square");
    // Highly degenerate spectra can stall the QR sweep at the tightest
    // deflation threshold; relax it in fixed steps before giving up. The
    // loosest accepted threshold is still two orders below every tolerance
    // used downstream.
    let schur = [f64::EPSILON, 1e-15, 1e-14, 1e-13, 1e-12]
        .iter()
        .find_map(|&eps| nalgebra::linalg::Schur::try_new(m.clone(), eps, 100_000))
        .ok_or(SpectralError::ConvergenceFailure)?;
    let values: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().copied().collect();

    let norm = infinity_norm(m).max(1.0);
    let max_imag = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let complex_detected = max_imag > 1e-9 * norm;
    let spectral_radius = values.iter().map(|v| v.norm()).fold(0.0, f64::max);

    let mut reals: Vec<f64> = values.iter().map(|v| v.re).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let tol = distinctness_tol(spectral_radius);
    let mut clusters: Vec<EigenCluster> = Vec::new();
    let mut start = 0;
    while start < reals.len() {
        let mut end = start + 1;
        while end < reals.len() && reals[end] - reals[end - 1] <= tol {
            end += 1;
        }
        let algebraic = end - start;
        let value = reals[start..end].iter().sum::<f64>() / algebraic as f64;
        let geometric = if algebraic == 1 {
            1
        } else {
            let shifted = m - DMatrix::identity(n, n) * value;
            n - qr_rank(&shifted, 1e-9 * norm)
        };
        clusters.push(EigenCluster { value, algebraic, geometric });
        start = end;
    }

    let min_gap = clusters
        .windows(2)
        .map(|w| w[1].value - w[0].value)
        .fold(f64::INFINITY, f64::min);

    Ok(EigenAnalysis {
        eigenvalues: reals,
        max_imag,
        complex_detected,
        clusters,
        spectral_radius,
        min_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_matrix() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        let e = numeric_eigen(&m).unwrap();
        assert_eq!(e.eigenvalues.len(), 3);
        assert_abs_diff_eq!(e.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.eigenvalues[2], 3.0, epsilon = 1e-12);
        assert!(e.clusters.iter().all(|c| c.algebraic == 1 && c.geometric == 1));
        assert!(e.is_diagonalizable());
    }

    #[test]
    fn jordan_block_is_defective() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let e = numeric_eigen(&m).unwrap();
        assert!(!e.complex_detected);
        assert_eq!(e.clusters.len(), 1);
        assert_eq!(e.clusters[0].algebraic, 2);
        assert_eq!(e.clusters[0].geometric, 1);
        assert!(!e.is_diagonalizable());
    }

    #[test]
    fn rotation_block_is_complex() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let e = numeric_eigen(&m).unwrap();
        assert!(e.complex_detected);
        assert_abs_diff_eq!(e.max_imag, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn repeated_but_complete() {
        let m = DMatrix::identity(4, 4) * 2.5;
        let e = numeric_eigen(&m).unwrap();
        assert_eq!(e.clusters.len(), 1);
        assert_eq!(e.clusters[0].algebraic, 4);
        assert_eq!(e.clusters[0].geometric, 4);
    }
}
