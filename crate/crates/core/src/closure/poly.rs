//! Polynomials in the Legendre basis with exact rational coefficients.
//!
//! The closure construction matches coefficients of `P_k(ξ)`; doing that over
//! `BigRational` keeps the derived matrix entries exact, so closed forms come
//! out bit-for-bit rather than within a tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Σ_k coeffs[k] · P_k(ξ)` with rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LegendrePoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// The basis polynomial `P_k`.
    pub fn basis(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Self { coeffs }
    }

    /// Expansion of the derivative: `P'_m = Σ (2k+1) P_k` over `k = m-1,
    /// m-3, …` down to 0 or 1.
    pub fn derivative_of_basis(m: usize) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); m];
        let mut k = m - 1;
        loop {
            coeffs[k] = BigRational::from(BigInt::from(2 * k as i64 + 1));
            if k < 2 {
                break;
            }
            k -= 2;
        }
        Self { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Multiplication by `ξ` via `ξ P_k = (k P_{k-1} + (k+1) P_{k+1})/(2k+1)`.
    pub fn mul_xi(&self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let denom = BigRational::from(BigInt::from(2 * k as i64 + 1));
            if k > 0 {
                out[k - 1] += c * BigRational::from(BigInt::from(k as i64)) / denom.clone();
            }
            out[k + 1] += c * BigRational::from(BigInt::from(k as i64 + 1)) / denom;
        }
        Self::from_coeffs(out)
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Self::from_coeffs(out)
    }

    /// Floating-point evaluation at `ξ` (for cross-checks against the
    /// numeric machinery).
    pub fn eval_f64(&self, xi: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap() * crate::legendre::legendre_eval(k, xi))
            .sum()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// Pretty-print support for reports.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
