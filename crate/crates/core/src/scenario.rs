//! The two reference problems on `Ω = [0,1]²`.
//!
//! Both start from the linear vertical velocity profile `u = v = ζ/4`, whose
//! expansion against the scaled basis gives `u_m = v_m = 1/8`,
//! `α₁ = β₁ = -1/8`, and zero for every higher moment. The radial dam break
//! puts `h = 1.5` inside a radius-0.2 disk around the center (else `h = 1`);
//! the smooth wave uses `h = 1 + exp(3cos(2π(x+y+0.5)) - 4)` with periodic
//! boundaries. Friction is active in both: `ν = λ = 0.1`, `g = 1`.

use crate::model::{PrimitiveState, SourceParams};
use crate::solver::{BoundaryCondition, Grid2d};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    RadialDamBreak,
    SmoothWave,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::RadialDamBreak => "radial-dam-break",
            ScenarioKind::SmoothWave => "smooth-wave",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "radial-dam-break" | "radial_dam_break" | "dam-break" | "dam_break" => {
                Some(ScenarioKind::RadialDamBreak)
            }
            "smooth-wave" | "smooth_wave" => Some(ScenarioKind::SmoothWave),
            _ => None,
        }
    }

    /// Default boundary conditions: periodic for the smooth wave, outflow
    /// (zero-gradient) for the dam break.
    pub fn default_bc(&self) -> BoundaryCondition {
        match self {
            ScenarioKind::RadialDamBreak => BoundaryCondition::Outflow,
            ScenarioKind::SmoothWave => BoundaryCondition::Periodic,
        }
    }

    /// The initial water height at a point.
    pub fn height(&self, x: f64, y: f64) -> f64 {
        match self {
            ScenarioKind::RadialDamBreak => {
                let (dx, dy) = (x - 0.5, y - 0.5);
                if (dx * dx + dy * dy).sqrt() <= 0.2 {
                    1.5
                } else {
                    1.0
                }
            }
            ScenarioKind::SmoothWave => {
                1.0 + (3.0 * (std::f64::consts::TAU * (x + y + 0.5)).cos() - 4.0).exp()
            }
        }
    }

    /// The initial primitive state at a point.
    pub fn initial_state(&self, x: f64, y: f64, n: usize, g: f64) -> PrimitiveState {
        let mut v = PrimitiveState::lake_at_rest(self.height(x, y), n, g);
        v.um = MEAN_VELOCITY;
        v.vm = MEAN_VELOCITY;
        v.alpha[0] = FIRST_MOMENT;
        v.beta[0] = FIRST_MOMENT;
        v
    }

    /// Friction parameters common to both problems.
    pub fn source(&self) -> SourceParams {
        SourceParams::slip_friction(0.1, 0.1, 1.0)
    }

    /// Unit-square grid at a given resolution.
    pub fn grid(&self, cells: usize) -> Grid2d {
        Grid2d::unit_square(cells, cells)
    }
}

/// `u_m = ∫₀¹ ζ/4 dζ = 1/8`.
pub const MEAN_VELOCITY: f64 = 0.125;
/// `α₁ = 3 ∫₀¹ (ζ/4) φ₁(ζ) dζ = -1/8`.
pub const FIRST_MOMENT: f64 = -0.125;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::{gauss_legendre_rule, scaled_basis_eval};

    /// The stated moments of `u(ζ) = ζ/4` are not assumptions: project the
    /// profile onto the basis by quadrature and compare.
    #[test]
    fn profile_moments_from_projection() {
        let profile = |z: f64| z / 4.0;
        let (nodes, weights) = gauss_legendre_rule(8);
        let integrate = |f: &dyn Fn(f64) -> f64| -> f64 {
            nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| 0.5 * w * f(0.5 * (x + 1.0)))
                .sum()
        };
        let um = integrate(&profile);
        assert!((um - MEAN_VELOCITY).abs() < 1e-14);
        for j in 1..=4 {
            let coeff =
                (2 * j + 1) as f64 * integrate(&|z| profile(z) * scaled_basis_eval(j, z));
            let expected = if j == 1 { FIRST_MOMENT } else { 0.0 };
            assert!((coeff - expected).abs() < 1e-14, "moment {j}");
        }
    }

    #[test]
    fn dam_break_height_profile() {
        let k = ScenarioKind::RadialDamBreak;
        assert_eq!(k.height(0.5, 0.5), 1.5);
        assert_eq!(k.height(0.5, 0.69), 1.5);
        assert_eq!(k.height(0.5, 0.71), 1.0);
        assert_eq!(k.height(0.0, 0.0), 1.0);
    }

    #[test]
    fn smooth_wave_height_bounds() {
        let k = ScenarioKind::SmoothWave;
        for i in 0..50 {
            for j in 0..50 {
                let h = k.height(i as f64 / 49.0, j as f64 / 49.0);
                assert!(h > 1.0 && h < 1.5);
            }
        }
    }
}
