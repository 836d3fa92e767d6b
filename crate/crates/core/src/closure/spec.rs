//! Closure descriptions: the free last rows of the reordered blocks.
//!
//! A custom closure replaces the last row of `Ã₁₁` and/or `Ã₂₂` (the
//! block-reordered x-direction coefficient matrix) with entries linear in
//! `(u_m, α₁)`. Everything else — the coupling block `Ã₂₁`, the y-direction
//! matrix — follows from the rotational-invariance pairing rules, so a valid
//! `ClosureSpec` always yields a rotationally invariant model.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::model::ModelError;

/// One last-row entry: `u_coeff · u_m + alpha_coeff · α₁`, kept as exact
/// rationals so constructed closures reproduce closed forms bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEntry {
    pub u_coeff: BigRational,
    pub alpha_coeff: BigRational,
}

impl LinearEntry {
    pub fn zero() -> Self {
        Self { u_coeff: BigRational::zero(), alpha_coeff: BigRational::zero() }
    }

    pub fn of_u(c: BigRational) -> Self {
        Self { u_coeff: c, alpha_coeff: BigRational::zero() }
    }

    pub fn of_alpha(c: BigRational) -> Self {
        Self { u_coeff: BigRational::zero(), alpha_coeff: c }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.u_coeff.to_f64().expect("rational fits f64"),
            self.alpha_coeff.to_f64().expect("rational fits f64"),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.u_coeff.is_zero() && self.alpha_coeff.is_zero()
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        if !self.u_coeff.is_zero() {
            parts.push(format!("{}*u_m", self.u_coeff));
        }
        if !self.alpha_coeff.is_zero() {
            let c = &self.alpha_coeff;
            if parts.is_empty() || c.is_positive() {
                parts.push(format!("{c}*a1"));
            } else {
                parts.push(format!("{c}*a1"));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Free last rows of the reordered blocks, with the target polynomial the
/// `Ã₂₂` row was matched against (Legendre coefficients in `ξ`), if any.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureSpec {
    pub n: usize,
    /// Row over the block-1 columns `(h, u_m, α₁, …, α_N)`; the `h` entry
    /// must vanish (a linear entry there cannot be rotationally invariant).
    pub last_row_a11: Vec<LinearEntry>,
    /// Row over the block-2 columns `(v_m, β₁, …, β_N)`, expressed as
    /// x-direction coefficients in `(u_m, α₁)`.
    pub last_row_a22: Vec<LinearEntry>,
    pub target_poly_legendre: Option<Vec<BigRational>>,
}

impl ClosureSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.n < 1 {
            return Err(ModelError::UnsupportedOrder(self.n));
        }
        if self.last_row_a11.len() != self.n + 2 {
            return Err(ModelError::InvalidClosure(format!(
                "last_row_a11 must have {} entries, got {}",
                self.n + 2,
                self.last_row_a11.len()
            )));
        }
        if self.last_row_a22.len() != self.n + 1 {
            return Err(ModelError::InvalidClosure(format!(
                "last_row_a22 must have {} entries, got {}",
                self.n + 1,
                self.last_row_a22.len()
            )));
        }
        if !self.last_row_a11[0].is_zero() {
            return Err(ModelError::InvalidClosure(
                "the h-column entry of the last row must be zero".to_string(),
            ));
        }
        Ok(())
    }

    /// Structured-text rendering: one `a..[row][col] = expr` line per entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("closure order N = {}\n", self.n));
        out.push_str("last row of A11 (columns h, u_m, a1..aN):\n");
        for (c, e) in self.last_row_a11.iter().enumerate() {
            out.push_str(&format!("  a11[{}][{}] = {}\n", self.n + 2, c + 1, e.render()));
        }
        out.push_str("last row of A22 (columns v_m, b1..bN):\n");
        for (c, e) in self.last_row_a22.iter().enumerate() {
            out.push_str(&format!("  a22[{}][{}] = {}\n", self.n + 1, c + 1, e.render()));
        }
        if let Some(t) = &self.target_poly_legendre {
            let coeffs: Vec<String> = t.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!(
                "target polynomial (Legendre coefficients P_0..P_{}): [{}]\n",
                t.len().saturating_sub(1),
                coeffs.join(", ")
            ));
        }
        out
    }
}
