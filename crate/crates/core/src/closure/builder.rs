//! Last-row matching: prescribe the characteristic polynomial of a free-row
//! Hessenberg block by solving a triangular system in exact arithmetic.
//!
//! For an unreduced lower Hessenberg matrix only the last row enters the
//! final member of the associated polynomial sequence,
//! `q_m = x q_{m-1} - Σ_j a_{m,j} q_{j-1}` (the superdiagonal closes with
//! `a_{m,m+1} := 1`). With the earlier `q_j` known in the Legendre basis of
//! `ξ = (x - u_m)/α₁`, matching `q_m` against a target polynomial determines
//! the row entries by back-substitution on Legendre coefficients — exactly,
//! because all coefficients are rational.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::poly::{rat, LegendrePoly};
use super::spec::{ClosureSpec, LinearEntry};
use crate::legendre::MomentConstants;
use crate::model::{ModelVariant, PrimitiveState};
use crate::spectral::{certify_hyperbolicity, Hyperbolicity, SpectralReport};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ClosureError {
    #[error("target degree {target} does not match the free row ({expected})")]
    DegreeMismatch { target: usize, expected: usize },
    #[error("leading coefficients are incompatible: {0}")]
    SingularMatch(String),
}

/// Associated polynomials `q_0 … q_N` of the HSWME `Ã₂₂` block as exact
/// `ξ`-polynomials: `q_j = (2j+1) P_j(ξ)`.
pub fn hswme_assoc_base(n: usize) -> Vec<LegendrePoly> {
    (0..=n)
        .map(|j| LegendrePoly::basis(j).scaled(&rat(2 * j as i64 + 1, 1)))
        .collect()
}

/// Solve `ξ b_{m-1} - Σ_j ν_j b_j = σ · target` for the row coefficients
/// `ν_0 … ν_{m-1}`; the scale `σ` is forced by the leading coefficient (the
/// target prescribes roots, not normalization). Requires `deg b_j = j`.
pub fn match_last_row(
    base: &[LegendrePoly],
    target: &LegendrePoly,
) -> Result<Vec<BigRational>, ClosureError> {
    let m = base.len();
    assert!(m >= 1, "base sequence must not be empty");
    for (j, b) in base.iter().enumerate() {
        assert_eq!(b.degree(), Some(j), "base polynomial {j} has wrong degree");
    }
    let expected = m;
    let tdeg = target.degree().unwrap_or(0);
    if target.is_zero() || tdeg != expected {
        return Err(ClosureError::DegreeMismatch { target: tdeg, expected });
    }
    let lead_target = target.leading().unwrap().clone();
    if lead_target.is_zero() {
        return Err(ClosureError::SingularMatch("zero leading coefficient".into()));
    }
    let grown = base[m - 1].mul_xi();
    let sigma = grown.leading().unwrap() / &lead_target;
    // Residual to be expanded over the base sequence.
    let mut residual = grown.sub(&target.scaled(&sigma));
    let mut nu = vec![BigRational::zero(); m];
    for j in (0..m).rev() {
        let lead = base[j].leading().unwrap();
        let c = residual.coeff(j) / lead;
        if !c.is_zero() {
            residual = residual.sub(&base[j].scaled(&c));
        }
        nu[j] = c;
    }
    if !residual.is_zero() {
        return Err(ClosureError::SingularMatch(
            "target is not reachable from the base sequence".into(),
        ));
    }
    Ok(nu)
}

/// Row coefficients translated to `Ã₂₂` entries: off-diagonal columns carry
/// `ν_{j-1}·α₁`, the diagonal `u_m + ν_m·α₁`.
pub fn row_entries_from_nu(nu: &[BigRational]) -> Vec<LinearEntry> {
    let m = nu.len();
    let mut row = Vec::with_capacity(m);
    for (j, c) in nu.iter().enumerate() {
        if j + 1 == m {
            row.push(LinearEntry {
                u_coeff: BigRational::from(BigInt::from(1)),
                alpha_coeff: c.clone(),
            });
        } else {
            row.push(LinearEntry::of_alpha(c.clone()));
        }
    }
    row
}

/// The HSWME `Ã₁₁` last row as exact entries (kept by closures that only
/// retune `Ã₂₂`).
pub fn hswme_a11_last_row(n: usize) -> Vec<LinearEntry> {
    let mut row = vec![LinearEntry::zero(); n + 2];
    if n == 1 {
        row[1] = LinearEntry::of_alpha(rat(2, 1));
    } else {
        row[n] = LinearEntry::of_alpha(rat(n as i64 - 1, 2 * n as i64 - 1));
    }
    row[n + 1] = LinearEntry::of_u(rat(1, 1));
    row
}

/// Named targets for the free `Ã₂₂` row.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosureTarget {
    /// `P'_{N+2}(ξ)` — the worked general closure.
    LobattoNext,
    /// `P_{N+1}(ξ)` — recovers the unmodified HSWME block.
    HswmeDefault,
    /// `P_N(ξ)·(ξ - c)` — a linear-shift family with one speed pinned at
    /// `u_m + c·α₁`.
    LegendreShift(BigRational),
}

impl ClosureTarget {
    pub fn polynomial(&self, n: usize) -> LegendrePoly {
        match self {
            ClosureTarget::LobattoNext => LegendrePoly::derivative_of_basis(n + 2),
            ClosureTarget::HswmeDefault => LegendrePoly::basis(n + 1),
            ClosureTarget::LegendreShift(c) => {
                let pn = LegendrePoly::basis(n);
                pn.mul_xi().sub(&pn.scaled(c))
            }
        }
    }
}

/// A constructed closure: the exact spec, the variant handle for assembly,
/// and the hyperbolicity classification at the degenerate corner states
/// `α₁ = 0`, `β₁ ∈ {0, 0.5}` (the matching argument says nothing there, so
/// the corner is certified numerically and attached).
#[derive(Debug, Clone)]
pub struct BuiltClosure {
    pub spec: Arc<ClosureSpec>,
    pub variant: ModelVariant,
    pub corner_reports: Vec<CornerReport>,
}

#[derive(Debug, Clone)]
pub struct CornerReport {
    pub beta1: f64,
    pub classification: Hyperbolicity,
    pub report: SpectralReport,
}

/// Build a closure from a target for the free `Ã₂₂` row.
pub fn build_closure(
    n: usize,
    target: &ClosureTarget,
    constants: &MomentConstants,
) -> Result<BuiltClosure, ClosureError> {
    let base = hswme_assoc_base(n);
    let tpoly = target.polynomial(n);
    let nu = match_last_row(&base, &tpoly)?;
    let spec = Arc::new(ClosureSpec {
        n,
        last_row_a11: hswme_a11_last_row(n),
        last_row_a22: row_entries_from_nu(&nu),
        target_poly_legendre: Some(tpoly.coeffs().to_vec()),
    });
    spec.validate().expect("constructed spec is well-formed");
    let variant = ModelVariant::Custom(spec.clone());

    let mut corner_reports = Vec::new();
    for beta1 in [0.0, 0.5] {
        let mut v = PrimitiveState::lake_at_rest(1.0, n, 1.0);
        v.um = 0.3;
        v.vm = -0.2;
        v.beta[0] = beta1;
        let reports = certify_hyperbolicity(&v, &variant, constants, 4)
            .expect("corner certification");
        let worst = reports
            .iter()
            .map(|r| r.classification)
            .max_by_key(|c| match c {
                Hyperbolicity::Hyperbolic => 0,
                Hyperbolicity::WeaklyHyperbolic => 1,
                Hyperbolicity::NonHyperbolic => 2,
            })
            .unwrap();
        corner_reports.push(CornerReport {
            beta1,
            classification: worst,
            report: reports.into_iter().next().unwrap(),
        });
    }
    Ok(BuiltClosure { spec, variant, corner_reports })
}

/// The worked closure: free `Ã₂₂` row matched to `P'_{N+2}`.
pub fn build_general_closure(
    n: usize,
    constants: &MomentConstants,
) -> Result<BuiltClosure, ClosureError> {
    build_closure(n, &ClosureTarget::LobattoNext, constants)
}

/// Exact reduced-sequence match for the β-closure `Ã₁₁` row, `N ≥ 3`: the
/// associated polynomials beyond the gravity factor are
/// `t_j ∝ P'_{j-1}(ξ)`, and requiring the final one proportional to `P_N(ξ)`
/// pins the subdiagonal entry. Returns that entry's `α₁` coefficient.
pub fn beta_a11_subdiag_coefficient(n: usize) -> Result<BigRational, ClosureError> {
    assert!(n >= 3, "the reduced sequence needs N >= 3");
    let ni = n as i64;
    // t_{N+1} = (2N+1)/(N(N+1)) P'_N, t_N = (2N-1)/((N-1)N) P'_{N-1},
    // target t_{N+2} = (2N+1)/(N+1) P_N.
    let t_np1 = LegendrePoly::derivative_of_basis(n).scaled(&rat(2 * ni + 1, ni * (ni + 1)));
    let t_n = LegendrePoly::derivative_of_basis(n - 1).scaled(&rat(2 * ni - 1, (ni - 1) * ni));
    let target = LegendrePoly::basis(n).scaled(&rat(2 * ni + 1, ni + 1));
    let residual = t_np1.mul_xi().sub(&target);
    // residual must be an exact multiple of t_n.
    let k = t_n.degree().expect("nonzero");
    let c = residual.coeff(k) / t_n.leading().unwrap();
    if !residual.sub(&t_n.scaled(&c)).is_zero() {
        return Err(ClosureError::SingularMatch(
            "reduced sequence does not reach a P_N multiple".into(),
        ));
    }
    Ok(c)
}
