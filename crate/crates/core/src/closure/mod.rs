//! Construction of rotationally invariant hyperbolic closures.
//!
//! The pieces: [`blocks`] carries the 2×2 invariance algebra, [`poly`] exact
//! Legendre-basis polynomials over the rationals, and [`builder`] the
//! last-row matching that equips the reordered blocks with prescribed
//! characteristic polynomials.

pub mod blocks;
pub mod builder;
pub mod poly;
mod spec;

pub use blocks::{partner_block, validate_block_invariance, BlockLinearForm};
pub use builder::{
    build_general_closure, hswme_assoc_base, match_last_row, BuiltClosure, ClosureError,
};
pub use poly::LegendrePoly;
pub use spec::{ClosureSpec, LinearEntry};
