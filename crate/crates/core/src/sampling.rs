//! Seeded random states for invariance sweeps and certification.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::PrimitiveState;

/// Random state with `h ∈ [0.5, 2]`, velocities and moments in `[-1, 1]`,
/// `g = 1`.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> PrimitiveState {
    PrimitiveState {
        h: rng.random_range(0.5..2.0),
        um: rng.random_range(-1.0..1.0),
        vm: rng.random_range(-1.0..1.0),
        alpha: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
        beta: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
        g: 1.0,
    }
}

/// The degenerate corner: `α₁ = 0` with a prescribed `β₁`, other fields
/// random.
pub fn corner_state(rng: &mut ChaCha8Rng, n: usize, beta1: f64) -> PrimitiveState {
    let mut v = random_state(rng, n);
    v.alpha[0] = 0.0;
    v.beta[0] = beta1;
    v
}
