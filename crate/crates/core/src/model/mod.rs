//! State representations, fluxes, and the directional coefficient matrices
//! `A(U)`, `B(U)` for every closure variant.

mod flux;
mod linearized;
mod state;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::closure::ClosureSpec;
use crate::legendre::{compute_moment_constants, MomentConstants, PolyBasisSpec};
use linearized::{LinKind, LinearizedCoeffs};

pub use flux::{nonconservative, source_term, FluxForm, SourceParams};
pub use linearized::rot90_conjugate;
pub use state::{
    ihalpha, ihbeta, ncomp, order_of_ncomp, primitive_from_slice, to_primitive, ConservedState,
    PrimitiveState, IH, IHU, IHV,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("non-positive water depth h = {0}")]
    NonPositiveDepth(f64),
    #[error("unsupported moment order {0}")]
    UnsupportedOrder(usize),
    #[error("invalid closure: {0}")]
    InvalidClosure(String),
    #[error("invalid source parameters: {0}")]
    InvalidSource(String),
}

/// Which closure governs matrix assembly.
#[derive(Debug, Clone)]
pub enum ModelVariant {
    /// The raw moment system: `A = ∂F/∂U + P(U)`.
    Swme,
    /// Coefficient matrices evaluated at `α_i = β_i = 0` for `i ≥ 2`.
    Hswme,
    /// Last-row modification placing the 1D-block speeds at Legendre nodes.
    BetaHswme,
    /// The globally hyperbolic retuning of the coupling and `Ã₂₂` blocks.
    GloballyHyperbolic,
    /// The worked closure with `Ã₂₂` speeds at the `P'_{N+2}` nodes.
    GeneralClosureExample,
    /// A user-built closure from the last-row matching machinery.
    Custom(Arc<ClosureSpec>),
}

impl ModelVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ModelVariant::Swme => "swme",
            ModelVariant::Hswme => "hswme",
            ModelVariant::BetaHswme => "beta-hswme",
            ModelVariant::GloballyHyperbolic => "globally-hyperbolic",
            ModelVariant::GeneralClosureExample => "general-closure-example",
            ModelVariant::Custom(_) => "custom",
        }
    }

    /// All five named variants.
    pub fn named() -> [ModelVariant; 5] {
        [
            ModelVariant::Swme,
            ModelVariant::Hswme,
            ModelVariant::BetaHswme,
            ModelVariant::GloballyHyperbolic,
            ModelVariant::GeneralClosureExample,
        ]
    }

    pub fn parse(s: &str) -> Option<ModelVariant> {
        match s.to_ascii_lowercase().as_str() {
            "swme" => Some(ModelVariant::Swme),
            "hswme" => Some(ModelVariant::Hswme),
            "beta-hswme" | "beta_hswme" | "beta" => Some(ModelVariant::BetaHswme),
            "globally-hyperbolic" | "globally_hyperbolic" | "global" => {
                Some(ModelVariant::GloballyHyperbolic)
            }
            "general-closure-example" | "example" => Some(ModelVariant::GeneralClosureExample),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

/// Component ordering of a matrix: interleaved `U` or block `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableOrdering {
    Interleaved,
    BlockReordered,
}

/// A dense directional coefficient matrix together with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalMatrix {
    pub entries: DMatrix<f64>,
    pub direction: Direction,
    pub ordering: VariableOrdering,
}

/// Interleaved index of each block-ordered component: `W_k = U_{perm[k]}`.
pub fn block_permutation(n: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(ncomp(n));
    perm.push(IH);
    perm.push(IHU);
    for i in 1..=n {
        perm.push(ihalpha(i));
    }
    perm.push(IHV);
    for i in 1..=n {
        perm.push(ihbeta(i));
    }
    perm
}

/// Flip a matrix between the interleaved and block orderings
/// (`P M Pᵀ` for the fixed permutation; an involution).
pub fn reorder(m: &DirectionalMatrix) -> DirectionalMatrix {
    let n = order_of_ncomp(m.entries.nrows());
    let perm = block_permutation(n);
    let size = m.entries.nrows();
    let mut out = DMatrix::zeros(size, size);
    match m.ordering {
        VariableOrdering::Interleaved => {
            for r in 0..size {
                for c in 0..size {
                    out[(r, c)] = m.entries[(perm[r], perm[c])];
                }
            }
            DirectionalMatrix {
                entries: out,
                direction: m.direction,
                ordering: VariableOrdering::BlockReordered,
            }
        }
        VariableOrdering::BlockReordered => {
            for r in 0..size {
                for c in 0..size {
                    out[(perm[r], perm[c])] = m.entries[(r, c)];
                }
            }
            DirectionalMatrix {
                entries: out,
                direction: m.direction,
                ordering: VariableOrdering::Interleaved,
            }
        }
    }
}

enum AssemblerKind {
    Swme { flux_x: FluxForm, flux_y: FluxForm },
    Linearized { coeffs: LinearizedCoeffs, max_node: f64 },
}

/// Cached per-(variant, order) assembly state. Reused across faces by the
/// solver; build once, evaluate per state.
pub struct MatrixAssembler {
    n: usize,
    constants: MomentConstants,
    kind: AssemblerKind,
}

impl MatrixAssembler {
    pub fn new(
        variant: &ModelVariant,
        n: usize,
        constants: MomentConstants,
    ) -> Result<Self, ModelError> {
        if n < 1 {
            return Err(ModelError::UnsupportedOrder(n));
        }
        assert_eq!(constants.order(), n);
        // At order one all variants coincide; route them through one code
        // path so their outputs are identical to the bit.
        let lin_kind = match variant {
            ModelVariant::Swme if n == 1 => Some((LinKind::Hswme, None)),
            ModelVariant::Swme => None,
            ModelVariant::Hswme => Some((LinKind::Hswme, None)),
            ModelVariant::BetaHswme => Some((LinKind::Beta, None)),
            ModelVariant::GloballyHyperbolic => Some((LinKind::GloballyHyperbolic, None)),
            ModelVariant::GeneralClosureExample => Some((LinKind::Example, None)),
            ModelVariant::Custom(spec) => Some((LinKind::Custom, Some(spec.as_ref()))),
        };
        let kind = match lin_kind {
            None => AssemblerKind::Swme {
                flux_x: FluxForm::x(n, &constants),
                flux_y: FluxForm::y(n, &constants),
            },
            Some((kind, spec)) => {
                let coeffs = LinearizedCoeffs::for_kind(kind, n, spec)?;
                let max_node = coeffs.max_wave_node(kind);
                AssemblerKind::Linearized { coeffs, max_node }
            }
        };
        Ok(Self { n, constants, kind })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn constants(&self) -> &MomentConstants {
        &self.constants
    }

    /// The directional coefficient matrix at a state (interleaved ordering).
    pub fn matrix(&self, v: &PrimitiveState, dir: Direction) -> DMatrix<f64> {
        debug_assert_eq!(v.order(), self.n);
        match (&self.kind, dir) {
            (AssemblerKind::Swme { flux_x, .. }, Direction::X) => {
                flux_x.jacobian(v) + nonconservative(v, &self.constants, false)
            }
            (AssemblerKind::Swme { flux_y, .. }, Direction::Y) => {
                flux_y.jacobian(v) + nonconservative(v, &self.constants, true)
            }
            (AssemblerKind::Linearized { coeffs, .. }, Direction::X) => coeffs.a_matrix(v),
            (AssemblerKind::Linearized { coeffs, .. }, Direction::Y) => coeffs.b_matrix(v),
        }
    }

    /// Cheap directional wave-speed bound `|u| + √(gh + α₁²) + node·|α₁|`
    /// when the closure's spectrum is known; `None` means the caller must
    /// fall back to a numeric eigenvalue estimate (raw SWME, `N ≥ 2`).
    pub fn wave_speed_bound(&self, v: &PrimitiveState, dir: Direction) -> Option<f64> {
        match &self.kind {
            AssemblerKind::Swme { .. } => None,
            AssemblerKind::Linearized { max_node, .. } => {
                let (vel, mom) = match dir {
                    Direction::X => (v.um, v.alpha1()),
                    Direction::Y => (v.vm, v.beta1()),
                };
                let gravity = (v.g * v.h + mom * mom).max(0.0).sqrt();
                Some(vel.abs() + gravity + max_node * mom.abs())
            }
        }
    }
}

/// Both directional matrices of a variant at a state.
pub fn assemble_matrices(
    v: &PrimitiveState,
    variant: &ModelVariant,
    constants: &MomentConstants,
) -> Result<(DirectionalMatrix, DirectionalMatrix), ModelError> {
    let asm = MatrixAssembler::new(variant, v.order(), constants.clone())?;
    Ok((
        DirectionalMatrix {
            entries: asm.matrix(v, Direction::X),
            direction: Direction::X,
            ordering: VariableOrdering::Interleaved,
        },
        DirectionalMatrix {
            entries: asm.matrix(v, Direction::Y),
            direction: Direction::Y,
            ordering: VariableOrdering::Interleaved,
        },
    ))
}

/// Moment constants for order `n` (convenience wrapper).
pub fn constants_for(n: usize) -> MomentConstants {
    compute_moment_constants(PolyBasisSpec::new(n))
}

/// x-direction physical flux `F(U)`.
pub fn flux_x(v: &PrimitiveState, k: &MomentConstants) -> DVector<f64> {
    FluxForm::x(v.order(), k).value(v)
}

/// y-direction physical flux `G(U)`.
pub fn flux_y(v: &PrimitiveState, k: &MomentConstants) -> DVector<f64> {
    FluxForm::y(v.order(), k).value(v)
}

/// `∂F/∂U` with respect to the conserved variables.
pub fn jacobian_flux_x(v: &PrimitiveState, k: &MomentConstants) -> DirectionalMatrix {
    DirectionalMatrix {
        entries: FluxForm::x(v.order(), k).jacobian(v),
        direction: Direction::X,
        ordering: VariableOrdering::Interleaved,
    }
}

/// `∂G/∂U` with respect to the conserved variables.
pub fn jacobian_flux_y(v: &PrimitiveState, k: &MomentConstants) -> DirectionalMatrix {
    DirectionalMatrix {
        entries: FluxForm::y(v.order(), k).jacobian(v),
        direction: Direction::Y,
        ordering: VariableOrdering::Interleaved,
    }
}

/// Non-conservative part `P(U)` (x direction).
pub fn nonconservative_x(v: &PrimitiveState, k: &MomentConstants) -> DirectionalMatrix {
    DirectionalMatrix {
        entries: nonconservative(v, k, false),
        direction: Direction::X,
        ordering: VariableOrdering::Interleaved,
    }
}

/// Non-conservative part `Q(U)` (y direction).
pub fn nonconservative_y(v: &PrimitiveState, k: &MomentConstants) -> DirectionalMatrix {
    DirectionalMatrix {
        entries: nonconservative(v, k, true),
        direction: Direction::Y,
        ordering: VariableOrdering::Interleaved,
    }
}
