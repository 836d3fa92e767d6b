//! Rotational invariance of 2×2 blocks.
//!
//! A pair of 2×2 matrices `A(V)`, `B(V)` with `V = (p, q)` is rotationally
//! invariant when `T₂⁻¹ A(T₂V) T₂ = cosθ A(V) + sinθ B(V)` for every angle.
//! For linear dependence on `V` the admissible `A` form a six-dimensional
//! space; `B` is then uniquely determined by
//!
//! ```text
//! b11(p,q) =  a22(q,-p)    b12(p,q) = -a21(q,-p)
//! b21(p,q) = -a12(q,-p)    b22(p,q) =  a11(q,-p)
//! ```
//!
//! which is the θ = π/2 instance of the invariance identity. The coefficient
//! matrices of every linearized moment closure are built from such pairs,
//! which is what makes modified closures rotationally invariant for free.

use nalgebra::Matrix2;
use rand::Rng;

/// A 2×2 matrix linear in `V = (p, q)`, written in the six-generator basis
///
/// ```text
/// c1 [[p,0],[q,0]] + c2 [[q,0],[-p,0]] + c3 [[p,0],[0,p]]
///   + c4 [[q,0],[0,q]] + c5 [[0,p],[0,q]] + c6 [[0,q],[0,-p]]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockLinearForm {
    pub c: [f64; 6],
}

impl BlockLinearForm {
    pub fn new(c: [f64; 6]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: [0.0; 6] }
    }

    /// Evaluate the block at `V = (p, q)`.
    pub fn eval(&self, p: f64, q: f64) -> Matrix2<f64> {
        let [c1, c2, c3, c4, c5, c6] = self.c;
        Matrix2::new(
            c1 * p + c2 * q + c3 * p + c4 * q,
            c5 * p + c6 * q,
            c1 * q - c2 * p,
            c3 * p + c4 * q + c5 * q - c6 * p,
        )
    }

    /// Recover the generator coefficients from the four entry forms, given as
    /// `(coefficient of p, coefficient of q)` per entry. Returns `None` if the
    /// entries are not realizable, i.e. the pair cannot be invariant.
    pub fn from_entries(
        a11: (f64, f64),
        a12: (f64, f64),
        a21: (f64, f64),
        a22: (f64, f64),
    ) -> Option<Self> {
        // a12 = c5 p + c6 q fixes c5, c6; a22 = c3 p + (c4+c5) q - c6 p …
        let (c5, c6) = a12;
        let c3 = a22.0 + c6;
        let c4 = a22.1 - c5;
        let c1 = a11.0 - c3;
        let c2 = a11.1 - c4;
        let form = Self { c: [c1, c2, c3, c4, c5, c6] };
        // a21 is then forced; reject inconsistent input.
        let forced = (-c2, c1);
        if (forced.0 - a21.0).abs() > 1e-12 || (forced.1 - a21.1).abs() > 1e-12 {
            return None;
        }
        Some(form)
    }
}

/// The unique partner `B` of an invariant block `A`.
pub fn partner_block(a: &BlockLinearForm) -> BlockLinearForm {
    let [c1, c2, c3, c4, c5, c6] = a.c;
    // B = c1 G5 + c2 G6 + c3 G4 - c4 G3 - c5 G1 - c6 G2.
    BlockLinearForm { c: [-c5, -c6, -c4, c3, c1, c2] }
}

/// Maximum residual of the invariance identity over `samples` random `(θ, V)`
/// draws, together with the oddness check `A(-V) = -A(V)` (vacuous for the
/// linear forms here but kept as a guard on the evaluation path).
pub fn validate_block_invariance(
    a: &BlockLinearForm,
    b: &BlockLinearForm,
    samples: usize,
    rng: &mut impl Rng,
) -> f64 {
    let mut max_res: f64 = 0.0;
    for _ in 0..samples {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let p: f64 = rng.random_range(-2.0..2.0);
        let q: f64 = rng.random_range(-2.0..2.0);
        let (c, s) = (theta.cos(), theta.sin());
        let t2 = Matrix2::new(c, s, -s, c);
        let t2_inv = Matrix2::new(c, -s, s, c);
        let rotated = t2 * nalgebra::Vector2::new(p, q);
        let lhs = t2_inv * a.eval(rotated.x, rotated.y) * t2;
        let rhs = a.eval(p, q) * c + b.eval(p, q) * s;
        let odd = a.eval(-p, -q) + a.eval(p, q);
        max_res = max_res
            .max((lhs - rhs).abs().max())
            .max(odd.abs().max());
    }
    max_res
}
