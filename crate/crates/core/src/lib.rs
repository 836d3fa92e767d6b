//! Two-dimensional shallow water moment equations.
//!
//! The library covers the whole pipeline for the SWME family of models:
//!
//! * [`legendre`] — Legendre/scaled-Legendre bases, quadrature nodes, and the
//!   moment-constant tensors `A_ijk`, `B_ijk`, `C_ij`;
//! * [`model`] — conserved/primitive states, physical fluxes, flux Jacobians,
//!   non-conservative matrices, source term, and the directional coefficient
//!   matrices `A(U)`, `B(U)` for every closure variant;
//! * [`spectral`] — Hessenberg characteristic polynomials, numeric and
//!   analytic eigenvalues, rotational-invariance residuals, and hyperbolicity
//!   certification;
//! * [`closure`] — the 2×2 rotational-invariance block algebra and the
//!   last-row matching machinery that constructs new closures with
//!   prescribed propagation speeds (exact rational arithmetic);
//! * [`solver`] — a first-order path-conservative finite-volume scheme with
//!   local Lax-Friedrichs dissipation on a uniform Cartesian grid;
//! * [`scenario`] — the radial dam break and smooth wave test problems.

pub mod closure;
pub mod legendre;
pub mod model;
pub mod sampling;
pub mod scenario;
pub mod solver;
pub mod spectral;

pub use model::{
    assemble_matrices, ConservedState, Direction, DirectionalMatrix, ModelError, ModelVariant,
    PrimitiveState, SourceParams, VariableOrdering,
};
pub use spectral::{Hyperbolicity, SpectralReport};
