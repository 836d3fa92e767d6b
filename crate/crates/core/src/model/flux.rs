//! Physical fluxes, their Jacobians with respect to the conserved variables,
//! the non-conservative coupling matrices, and the friction/gravity source.
//!
//! Every flux component is a sum of terms `c · U_a U_b / h` plus, in the
//! momentum components, the pressure `g h²/2`. Values and Jacobians are both
//! generated from that one term list, so they cannot drift apart; an
//! independent finite-difference check lives in the tests.

use nalgebra::{DMatrix, DVector};

use super::state::{ihalpha, ihbeta, ncomp, PrimitiveState, IH, IHU, IHV};
use crate::legendre::MomentConstants;

/// One `c · U_a U_b / h` term of a flux component.
#[derive(Debug, Clone, Copy)]
struct QuadTerm {
    a: usize,
    b: usize,
    c: f64,
}

#[derive(Debug, Clone)]
enum Component {
    /// The component equals `U_a` (mass flux rows).
    Linear(usize),
    /// `Σ c·U_a U_b / h`, optionally plus `g h²/2`.
    Quadratic { terms: Vec<QuadTerm>, pressure: bool },
}

/// Term-list description of `F(U)` or `G(U)` for a fixed moment order.
#[derive(Debug, Clone)]
pub struct FluxForm {
    n: usize,
    components: Vec<Component>,
}

impl FluxForm {
    /// The x-direction flux `F(U)`.
    pub fn x(n: usize, k: &MomentConstants) -> Self {
        assert_eq!(k.order(), n);
        let mut components = Vec::with_capacity(ncomp(n));
        components.push(Component::Linear(IHU));

        // h(u² + Σ α_j²/(2j+1)) + gh²/2
        let mut t = vec![QuadTerm { a: IHU, b: IHU, c: 1.0 }];
        for j in 1..=n {
            t.push(QuadTerm { a: ihalpha(j), b: ihalpha(j), c: 1.0 / (2 * j + 1) as f64 });
        }
        components.push(Component::Quadratic { terms: t, pressure: true });

        // h(uv + Σ α_j β_j/(2j+1))
        let mut t = vec![QuadTerm { a: IHU, b: IHV, c: 1.0 }];
        for j in 1..=n {
            t.push(QuadTerm { a: ihalpha(j), b: ihbeta(j), c: 1.0 / (2 * j + 1) as f64 });
        }
        components.push(Component::Quadratic { terms: t, pressure: false });

        for i in 1..=n {
            // h(2u α_i + Σ A_ijk α_j α_k)
            let mut t = vec![QuadTerm { a: IHU, b: ihalpha(i), c: 2.0 }];
            for j in 1..=n {
                for kk in 1..=n {
                    let c = k.a(i, j, kk);
                    if c != 0.0 {
                        t.push(QuadTerm { a: ihalpha(j), b: ihalpha(kk), c });
                    }
                }
            }
            components.push(Component::Quadratic { terms: t, pressure: false });

            // h(u β_i + v α_i + Σ A_ijk α_j β_k)
            let mut t = vec![
                QuadTerm { a: IHU, b: ihbeta(i), c: 1.0 },
                QuadTerm { a: IHV, b: ihalpha(i), c: 1.0 },
            ];
            for j in 1..=n {
                for kk in 1..=n {
                    let c = k.a(i, j, kk);
                    if c != 0.0 {
                        t.push(QuadTerm { a: ihalpha(j), b: ihbeta(kk), c });
                    }
                }
            }
            components.push(Component::Quadratic { terms: t, pressure: false });
        }
        Self { n, components }
    }

    /// The y-direction flux `G(U)`: the mirror of `F` with the roles of
    /// `(u_m, α)` and `(v_m, β)` exchanged.
    pub fn y(n: usize, k: &MomentConstants) -> Self {
        assert_eq!(k.order(), n);
        let mut components = Vec::with_capacity(ncomp(n));
        components.push(Component::Linear(IHV));

        let mut t = vec![QuadTerm { a: IHU, b: IHV, c: 1.0 }];
        for j in 1..=n {
            t.push(QuadTerm { a: ihalpha(j), b: ihbeta(j), c: 1.0 / (2 * j + 1) as f64 });
        }
        components.push(Component::Quadratic { terms: t, pressure: false });

        let mut t = vec![QuadTerm { a: IHV, b: IHV, c: 1.0 }];
        for j in 1..=n {
            t.push(QuadTerm { a: ihbeta(j), b: ihbeta(j), c: 1.0 / (2 * j + 1) as f64 });
        }
        components.push(Component::Quadratic { terms: t, pressure: true });

        for i in 1..=n {
            let mut t = vec![
                QuadTerm { a: IHU, b: ihbeta(i), c: 1.0 },
                QuadTerm { a: IHV, b: ihalpha(i), c: 1.0 },
            ];
            for j in 1..=n {
                for kk in 1..=n {
                    let c = k.a(i, j, kk);
                    if c != 0.0 {
                        t.push(QuadTerm { a: ihalpha(j), b: ihbeta(kk), c });
                    }
                }
            }
            components.push(Component::Quadratic { terms: t, pressure: false });

            let mut t = vec![QuadTerm { a: IHV, b: ihbeta(i), c: 2.0 }];
            for j in 1..=n {
                for kk in 1..=n {
                    let c = k.a(i, j, kk);
                    if c != 0.0 {
                        t.push(QuadTerm { a: ihbeta(j), b: ihbeta(kk), c });
                    }
                }
            }
            components.push(Component::Quadratic { terms: t, pressure: false });
        }
        Self { n, components }
    }

    /// Flux value at a state.
    pub fn value(&self, v: &PrimitiveState) -> DVector<f64> {
        let u = v.to_conserved();
        let u = u.as_slice();
        let h = v.h;
        let mut out = DVector::zeros(ncomp(self.n));
        for (row, comp) in self.components.iter().enumerate() {
            out[row] = match comp {
                Component::Linear(a) => u[*a],
                Component::Quadratic { terms, pressure } => {
                    let mut s = 0.0;
                    for t in terms {
                        s += t.c * u[t.a] * u[t.b] / h;
                    }
                    if *pressure {
                        s += 0.5 * v.g * h * h;
                    }
                    s
                }
            };
        }
        out
    }

    /// Jacobian `∂(flux)/∂U` at a state, differentiated term by term:
    /// `∂(c U_a U_b / h)` contributes `-c p_a p_b` to the `h` column and
    /// `c p_b`, `c p_a` to columns `a`, `b`, with `p_x = U_x / h`.
    pub fn jacobian(&self, v: &PrimitiveState) -> DMatrix<f64> {
        let m = ncomp(self.n);
        let u = v.to_conserved();
        let u = u.as_slice();
        let h = v.h;
        let mut jac = DMatrix::zeros(m, m);
        for (row, comp) in self.components.iter().enumerate() {
            match comp {
                Component::Linear(a) => jac[(row, *a)] = 1.0,
                Component::Quadratic { terms, pressure } => {
                    for t in terms {
                        let pa = u[t.a] / h;
                        let pb = u[t.b] / h;
                        jac[(row, IH)] -= t.c * pa * pb;
                        jac[(row, t.a)] += t.c * pb;
                        jac[(row, t.b)] += t.c * pa;
                    }
                    if *pressure {
                        jac[(row, IH)] += v.g * h;
                    }
                }
            }
        }
        jac
    }
}

/// `P(U) = P_1 + P_2` (x direction) or `Q(U) = Q_1 + Q_2` (y direction).
///
/// `P_1 = diag(0_{3×3}, p, …, p)` with `p = [[-u_m, 0], [-v_m, 0]]`, and `P_2`
/// carries the moment coupling blocks `[[Σ_k B_ijk α_k, 0], [Σ_k B_ijk β_k, 0]]`.
/// The y-direction analogues put the same columns in the second slot.
pub fn nonconservative(v: &PrimitiveState, k: &MomentConstants, ydir: bool) -> DMatrix<f64> {
    let n = v.order();
    assert_eq!(k.order(), n);
    let m = ncomp(n);
    let mut p = DMatrix::zeros(m, m);
    let col = usize::from(ydir); // which column of each 2x2 block is active
    for i in 1..=n {
        let (ra, rb) = (ihalpha(i), ihbeta(i));
        p[(ra, ihalpha(i) + col)] += -v.um;
        p[(rb, ihalpha(i) + col)] += -v.vm;
        for j in 1..=n {
            let mut sa = 0.0;
            let mut sb = 0.0;
            for kk in 1..=n {
                sa += k.b(i, j, kk) * v.alpha[kk - 1];
                sb += k.b(i, j, kk) * v.beta[kk - 1];
            }
            p[(ra, ihalpha(j) + col)] += sa;
            p[(rb, ihalpha(j) + col)] += sb;
        }
    }
    p
}

/// Friction and gravity source parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceParams {
    /// Kinematic viscosity `ν ≥ 0`.
    pub nu: f64,
    /// Slip length `λ`; must be positive whenever `ν > 0`.
    pub lambda: f64,
    /// Gravitational acceleration.
    pub g: f64,
    /// Unit gravity direction `(e_x, e_y, e_z)`.
    pub e: [f64; 3],
    /// Bottom slope `(∂_x h_b, ∂_y h_b)` at the evaluation point.
    pub bottom_grad: [f64; 2],
}

impl SourceParams {
    /// Frictionless flat-bottom configuration with standard gravity direction.
    pub fn inviscid(g: f64) -> Self {
        Self { nu: 0.0, lambda: 1.0, g, e: [0.0, 0.0, -1.0], bottom_grad: [0.0, 0.0] }
    }

    /// The slip-friction configuration used by the test problems.
    pub fn slip_friction(nu: f64, lambda: f64, g: f64) -> Self {
        Self { nu, lambda, g, e: [0.0, 0.0, -1.0], bottom_grad: [0.0, 0.0] }
    }

    pub fn validate(&self) -> Result<(), super::ModelError> {
        let norm = (self.e[0] * self.e[0] + self.e[1] * self.e[1] + self.e[2] * self.e[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(super::ModelError::InvalidSource(format!(
                "gravity direction must be a unit vector, |e| = {norm}"
            )));
        }
        if self.nu < 0.0 {
            return Err(super::ModelError::InvalidSource(format!(
                "viscosity must be non-negative, nu = {}",
                self.nu
            )));
        }
        if self.nu > 0.0 && self.lambda <= 0.0 {
            return Err(super::ModelError::InvalidSource(format!(
                "slip length must be positive when friction is active, lambda = {}",
                self.lambda
            )));
        }
        Ok(())
    }

    #[inline]
    fn friction(&self) -> f64 {
        if self.nu == 0.0 {
            0.0
        } else {
            self.nu / self.lambda
        }
    }
}

/// Source vector `S(U)`:
///
/// ```text
/// S_h   = 0
/// S_hu  = -(ν/λ)(u_m + Σ α_j) + h g (e_x - e_z ∂_x h_b)
/// S_hv  = -(ν/λ)(v_m + Σ β_j) + h g (e_y - e_z ∂_y h_b)
/// S_hα_i = -(2i+1)(ν/λ)(u_m + Σ_j (1 + λ C_ij / h) α_j)
/// S_hβ_i = -(2i+1)(ν/λ)(v_m + Σ_j (1 + λ C_ij / h) β_j)
/// ```
pub fn source_term(
    v: &PrimitiveState,
    p: &SourceParams,
    k: &MomentConstants,
) -> Result<DVector<f64>, super::ModelError> {
    if v.h <= 0.0 {
        return Err(super::ModelError::NonPositiveDepth(v.h));
    }
    p.validate()?;
    let n = v.order();
    let fr = p.friction();
    let mut s = DVector::zeros(ncomp(n));
    let sum_a: f64 = v.alpha.iter().sum();
    let sum_b: f64 = v.beta.iter().sum();
    s[IHU] = -fr * (v.um + sum_a) + v.h * p.g * (p.e[0] - p.e[2] * p.bottom_grad[0]);
    s[IHV] = -fr * (v.vm + sum_b) + v.h * p.g * (p.e[1] - p.e[2] * p.bottom_grad[1]);
    for i in 1..=n {
        let mut sa = v.um;
        let mut sb = v.vm;
        for j in 1..=n {
            let w = 1.0 + p.lambda * k.c(i, j) / v.h;
            sa += w * v.alpha[j - 1];
            sb += w * v.beta[j - 1];
        }
        let scale = -((2 * i + 1) as f64) * fr;
        s[ihalpha(i)] = scale * sa;
        s[ihbeta(i)] = scale * sb;
    }
    Ok(s)
}
