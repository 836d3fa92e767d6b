//! Associated polynomial sequences of unreduced lower Hessenberg matrices.
//!
//! For `A = (a_ij)` lower Hessenberg (`a_ij = 0` for `j > i+1`) with nonzero
//! superdiagonal, the sequence
//!
//! ```text
//! q_0 = 1,   q_i(x) = (x q_{i-1}(x) - Σ_{j≤i} a_ij q_{j-1}(x)) / a_{i,i+1}
//! ```
//!
//! (with `a_{n,n+1} := 1`) satisfies `det(xI - A) = ρ q_n(x)`,
//! `ρ = Π a_{i,i+1}`, whenever the roots of `q_n` are simple; every root of
//! `q_n` is an eigenvalue with eigenvector `(q_0(λ), …, q_{n-1}(λ))`.
//! The coefficient form below is fine for the orders used here (n ≲ 30);
//! for large blocks use [`assoc_eval`], which runs the same recurrence at a
//! sample point and stays stable at any order.

use nalgebra::DMatrix;

use super::SpectralError;

/// A dense matrix checked to be lower Hessenberg, with the superdiagonal
/// zero-pattern recorded.
#[derive(Debug, Clone)]
pub struct HessenbergView {
    entries: DMatrix<f64>,
    superdiag_nonzero: Vec<bool>,
}

impl HessenbergView {
    /// Wrap a lower Hessenberg matrix. Superdiagonal entries are compared
    /// against `1e-13·‖A‖∞` to decide the unreduced flag.
    pub fn new(entries: DMatrix<f64>) -> Result<Self, SpectralError> {
        let n = entries.nrows();
        assert_eq!(n, entries.ncols(), "matrix must be square");
        for i in 0..n {
            for j in (i + 2)..n {
                if entries[(i, j)] != 0.0 {
                    return Err(SpectralError::NotHessenberg { row: i, col: j });
                }
            }
        }
        let scale = infinity_norm(&entries).max(1.0);
        let superdiag_nonzero = (0..n.saturating_sub(1))
            .map(|i| entries[(i, i + 1)].abs() > 1e-13 * scale)
            .collect();
        Ok(Self { entries, superdiag_nonzero })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn is_unreduced(&self) -> bool {
        self.superdiag_nonzero.iter().all(|&b| b)
    }

    /// `ρ = Π a_{i,i+1}`.
    pub fn superdiag_product(&self) -> f64 {
        (0..self.size() - 1).map(|i| self.entries[(i, i + 1)]).product()
    }
}

pub fn infinity_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|r| m.row(r).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// The associated polynomials `q_0 … q_n` in ascending monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence {
    pub polys: Vec<Vec<f64>>,
}

impl PolySequence {
    pub fn last(&self) -> &[f64] {
        self.polys.last().unwrap()
    }
}

/// Compute the associated polynomial sequence in coefficient form.
pub fn associated_polynomials(h: &HessenbergView) -> Result<PolySequence, SpectralError> {
    if !h.is_unreduced() {
        return Err(SpectralError::NotUnreduced);
    }
    let n = h.size();
    let a = h.entries();
    let mut polys: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1.0]);
    for i in 1..=n {
        // x·q_{i-1}
        let mut p = vec![0.0; i + 1];
        for (k, &c) in polys[i - 1].iter().enumerate() {
            p[k + 1] = c;
        }
        for j in 1..=i {
            let aij = a[(i - 1, j - 1)];
            if aij != 0.0 {
                for (k, &c) in polys[j - 1].iter().enumerate() {
                    p[k] -= aij * c;
                }
            }
        }
        let denom = if i < n { a[(i - 1, i)] } else { 1.0 };
        for c in &mut p {
            *c /= denom;
        }
        polys.push(p);
    }
    Ok(PolySequence { polys })
}

/// Run the recurrence at a point: returns `(q_0(x), …, q_n(x))`. Stable for
/// any order, unlike the coefficient form.
pub fn assoc_eval(h: &HessenbergView, x: f64) -> Result<Vec<f64>, SpectralError> {
    if !h.is_unreduced() {
        return Err(SpectralError::NotUnreduced);
    }
    let n = h.size();
    let a = h.entries();
    let mut vals = Vec::with_capacity(n + 1);
    vals.push(1.0);
    for i in 1..=n {
        let mut v = x * vals[i - 1];
        for j in 1..=i {
            let aij = a[(i - 1, j - 1)];
            if aij != 0.0 {
                v -= aij * vals[j - 1];
            }
        }
        let denom = if i < n { a[(i - 1, i)] } else { 1.0 };
        vals.push(v / denom);
    }
    Ok(vals)
}

/// Roots of a monomial-coefficient polynomial via its companion matrix.
pub fn poly_roots(coeffs: &[f64]) -> Vec<nalgebra::Complex<f64>> {
    let mut c = coeffs.to_vec();
    while matches!(c.last(), Some(v) if v.abs() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut companion = DMatrix::zeros(deg, deg);
    for i in 0..deg {
        companion[(i, deg - 1)] = -c[i] / lead;
        if i + 1 < deg {
            companion[(i + 1, i)] = 1.0;
        }
    }
    companion.complex_eigenvalues().iter().copied().collect()
}

/// `det(xI - A) = ρ q_n` in monomial coefficients, with a numeric check that
/// the roots of `q_n` are simple (the identity needs it). Root clusters
/// tighter than `1e-10` of the scale are rejected so callers can fall back
/// to a dense method.
pub fn char_poly_hessenberg(h: &HessenbergView) -> Result<Vec<f64>, SpectralError> {
    let seq = associated_polynomials(h)?;
    let rho = h.superdiag_product();
    let qn = seq.last();
    let roots = poly_roots(qn);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for (i, r) in roots.iter().enumerate() {
        for s in roots.iter().skip(i + 1) {
            if (r - s).norm() < 1e-10 * scale {
                return Err(SpectralError::SimplicityUnverifiable);
            }
        }
    }
    Ok(qn.iter().map(|&c| rho * c).collect())
}

/// Horner evaluation of ascending monomial coefficients.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_by_one_matrix() {
        let h = HessenbergView::new(DMatrix::from_row_slice(1, 1, &[3.0])).unwrap();
        let seq = associated_polynomials(&h).unwrap();
        // q_1(x) = x - 3
        assert_eq!(seq.polys[1], vec![-3.0, 1.0]);
    }

    #[test]
    fn companion_matrix_of_x2_minus_1() {
        // [[0, 1], [1, 0]] has char poly x² - 1.
        let h = HessenbergView::new(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        let cp = char_poly_hessenberg(&h).unwrap();
        assert_eq!(cp.len(), 3);
        assert_abs_diff_eq!(cp[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(cp[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(cp[2], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn reduced_matrix_is_rejected() {
        let h = HessenbergView::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0])).unwrap();
        assert!(!h.is_unreduced());
        assert_eq!(
            associated_polynomials(&h).unwrap_err(),
            SpectralError::NotUnreduced
        );
    }

    #[test]
    fn upper_triangle_is_rejected() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 5.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            HessenbergView::new(m),
            Err(SpectralError::NotHessenberg { row: 0, col: 2 })
        ));
    }

    #[test]
    fn eval_agrees_with_coefficients() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[0.5, 2.0, 0.0, -1.0, 0.25, 1.5, 0.75, -0.5, 1.0],
        );
        let h = HessenbergView::new(m).unwrap();
        let seq = associated_polynomials(&h).unwrap();
        for i in 0..7 {
            let x = -2.0 + i as f64 * 0.7;
            let vals = assoc_eval(&h, x).unwrap();
            for (k, poly) in seq.polys.iter().enumerate() {
                assert_abs_diff_eq!(vals[k], poly_eval(poly, x), epsilon = 1e-12);
            }
        }
    }
}
