//! Conserved and primitive state vectors.
//!
//! The conserved vector is `U = (h, hu_m, hv_m, hα_1, hβ_1, …, hα_N, hβ_N)`,
//! of length `2N + 3`. Components pair up under rotations: `(hu_m, hv_m)` and
//! each `(hα_i, hβ_i)` transform as vectors, while `h` is a scalar.

use super::ModelError;

/// Index of `h` in the conserved layout.
pub const IH: usize = 0;
/// Index of `hu_m`.
pub const IHU: usize = 1;
/// Index of `hv_m`.
pub const IHV: usize = 2;

/// Index of `hα_i` (1-based moment index).
#[inline]
pub const fn ihalpha(i: usize) -> usize {
    2 * i + 1
}

/// Index of `hβ_i` (1-based moment index).
#[inline]
pub const fn ihbeta(i: usize) -> usize {
    2 * i + 2
}

/// Number of conserved components for moment order `n`.
#[inline]
pub const fn ncomp(n: usize) -> usize {
    2 * n + 3
}

/// Moment order from a component count.
#[inline]
pub const fn order_of_ncomp(m: usize) -> usize {
    (m - 3) / 2
}

/// Conserved state at a point: `(h, hu_m, hv_m, hα_1, hβ_1, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedState {
    data: Vec<f64>,
}

impl ConservedState {
    pub fn new(data: Vec<f64>) -> Self {
        assert!(data.len() >= 5 && data.len() % 2 == 1, "length must be 2N+3");
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: vec![0.0; ncomp(n)] }
    }

    pub fn order(&self) -> usize {
        order_of_ncomp(self.data.len())
    }

    pub fn h(&self) -> f64 {
        self.data[IH]
    }

    pub fn hum(&self) -> f64 {
        self.data[IHU]
    }

    pub fn hvm(&self) -> f64 {
        self.data[IHV]
    }

    pub fn halpha(&self, i: usize) -> f64 {
        self.data[ihalpha(i)]
    }

    pub fn hbeta(&self, i: usize) -> f64 {
        self.data[ihbeta(i)]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

/// Primitive variables `(h, u_m, v_m, α, β)` together with the gravitational
/// acceleration, which every coefficient matrix depends on through `gh`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveState {
    pub h: f64,
    pub um: f64,
    pub vm: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub g: f64,
}

impl PrimitiveState {
    pub fn order(&self) -> usize {
        debug_assert_eq!(self.alpha.len(), self.beta.len());
        self.alpha.len()
    }

    /// Still water of depth `h`: zero velocities and moments.
    pub fn lake_at_rest(h: f64, n: usize, g: f64) -> Self {
        Self { h, um: 0.0, vm: 0.0, alpha: vec![0.0; n], beta: vec![0.0; n], g }
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha[0]
    }

    pub fn beta1(&self) -> f64 {
        self.beta[0]
    }

    /// The state with `α_i = β_i = 0` for `i ≥ 2`; coefficient matrices of the
    /// linearized closures are the full matrices evaluated here.
    pub fn linearized(&self) -> Self {
        let mut s = self.clone();
        for i in 1..s.alpha.len() {
            s.alpha[i] = 0.0;
            s.beta[i] = 0.0;
        }
        s
    }

    /// Conserved vector `U`.
    pub fn to_conserved(&self) -> ConservedState {
        let n = self.order();
        let mut data = vec![0.0; ncomp(n)];
        data[IH] = self.h;
        data[IHU] = self.h * self.um;
        data[IHV] = self.h * self.vm;
        for i in 1..=n {
            data[ihalpha(i)] = self.h * self.alpha[i - 1];
            data[ihbeta(i)] = self.h * self.beta[i - 1];
        }
        ConservedState::new(data)
    }
}

/// Primitive variables from a conserved slice. Rejects non-positive depth.
pub fn primitive_from_slice(u: &[f64], g: f64) -> Result<PrimitiveState, ModelError> {
    let h = u[IH];
    if h <= 0.0 {
        return Err(ModelError::NonPositiveDepth(h));
    }
    let n = order_of_ncomp(u.len());
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for i in 1..=n {
        alpha.push(u[ihalpha(i)] / h);
        beta.push(u[ihbeta(i)] / h);
    }
    Ok(PrimitiveState { h, um: u[IHU] / h, vm: u[IHV] / h, alpha, beta, g })
}

/// Primitive variables of a conserved state.
pub fn to_primitive(u: &ConservedState, g: f64) -> Result<PrimitiveState, ModelError> {
    primitive_from_slice(u.as_slice(), g)
}
