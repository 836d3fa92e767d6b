//! First-order path-conservative finite-volume scheme.
//!
//! Interfaces carry fluctuations rather than fluxes: with `M` the directional
//! coefficient matrix at the arithmetic-average state and `s` a bound on its
//! spectral radius (local Lax-Friedrichs),
//!
//! ```text
//! D∓ = ½ (M ∓ sI)(U_R - U_L),       D⁻ + D⁺ = M (U_R - U_L),
//! ```
//!
//! and the unsplit explicit Euler update reads
//!
//! ```text
//! U_i ← U_i - Δt/Δx (D⁺_{i-½} + D⁻_{i+½}) - Δt/Δy (…) + Δt S(U_i).
//! ```
//!
//! The first row of every variant's matrix is `(0, 1, 0, …)`, so the mass
//! component of `D⁻ + D⁺` telescopes and total mass is conserved to rounding
//! under periodic boundaries.

mod grid;
pub mod output;

use nalgebra::DVector;

use crate::legendre::MomentConstants;
use crate::model::{
    self, ncomp, primitive_from_slice, Direction, MatrixAssembler, ModelError, ModelVariant,
    PrimitiveState, SourceParams,
};
use crate::spectral::{numeric_eigen, SpectralError};

pub use grid::{FieldState, Grid2d};

/// Depth below which a cell is treated as dry: the state is clamped to
/// `h = H_DRY` with zero velocities and moments.
pub const H_DRY: f64 = 1e-8;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SolverError {
    #[error("dry cell at ({i}, {j}), t = {t}: h = {h}")]
    DryCell { i: usize, j: usize, t: f64, h: f64 },
    #[error("dry interface state")]
    DryInterface,
    #[error("non-finite value in component {comp} at cell ({i}, {j}), t = {t}")]
    NonFinite { i: usize, j: usize, comp: usize, t: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-gradient: the ghost copies the nearest interior cell.
    Outflow,
}

impl BoundaryCondition {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::Outflow => "outflow",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" => Some(BoundaryCondition::Periodic),
            "outflow" | "zero-gradient" => Some(BoundaryCondition::Outflow),
            _ => None,
        }
    }
}

/// Interface dissipation operator. Only local Lax-Friedrichs is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dissipation {
    #[default]
    LocalLaxFriedrichs,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub bc_x: BoundaryCondition,
    pub bc_y: BoundaryCondition,
    pub variant: ModelVariant,
    pub source: SourceParams,
    pub dissipation: Dissipation,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(ModelError::InvalidClosure(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        self.source.validate()
    }
}

/// Safety factor applied to numerically estimated wave speeds (raw SWME has
/// no closed-form spectrum).
const NUMERIC_SPEED_INFLATION: f64 = 1.05;

/// Prebuilt per-run state: the variant's matrix assembler plus the config.
pub struct SolverContext {
    pub config: SolverConfig,
    assembler: MatrixAssembler,
    order: usize,
}

impl SolverContext {
    pub fn new(config: SolverConfig, order: usize, constants: MomentConstants) -> Result<Self, SolverError> {
        config.validate()?;
        let assembler = MatrixAssembler::new(&config.variant, order, constants)?;
        Ok(Self { config, assembler, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn assembler(&self) -> &MatrixAssembler {
        &self.assembler
    }

    fn g(&self) -> f64 {
        self.config.source.g
    }

    /// Directional wave-speed estimate at one state: the closed-form bound
    /// where available, otherwise inflated numeric eigenvalues.
    fn speed(&self, v: &PrimitiveState, dir: Direction) -> Result<f64, SolverError> {
        if let Some(s) = self.assembler.wave_speed_bound(v, dir) {
            return Ok(s);
        }
        let m = self.assembler.matrix(v, dir);
        let analysis = numeric_eigen(&m)?;
        Ok(NUMERIC_SPEED_INFLATION * analysis.spectral_radius)
    }
}

/// Fluctuations `(D⁻, D⁺)` across one interface.
pub fn interface_fluctuations(
    ul: &[f64],
    ur: &[f64],
    axis: Direction,
    ctx: &SolverContext,
) -> Result<(DVector<f64>, DVector<f64>), SolverError> {
    let m = ncomp(ctx.order);
    debug_assert!(ul.len() == m && ur.len() == m);
    if ul[model::IH] <= H_DRY || ur[model::IH] <= H_DRY {
        return Err(SolverError::DryInterface);
    }
    let mut avg = vec![0.0; m];
    for c in 0..m {
        avg[c] = 0.5 * (ul[c] + ur[c]);
    }
    let v_avg = primitive_from_slice(&avg, ctx.g())?;
    let mat = ctx.assembler.matrix(&v_avg, axis);
    let s = ctx.speed(&v_avg, axis)?;
    let du = DVector::from_fn(m, |c, _| ur[c] - ul[c]);
    let mdu = &mat * &du;
    let half_s_du = &du * (0.5 * s);
    let d_minus = &mdu * 0.5 - &half_s_du;
    let d_plus = &mdu * 0.5 + &half_s_du;
    Ok((d_minus, d_plus))
}

/// Ghost-extended copy of the state: one ghost layer per side, filled
/// according to the per-axis boundary conditions.
pub fn apply_bc(state: &FieldState, bc_x: BoundaryCondition, bc_y: BoundaryCondition) -> Padded {
    let (nx, ny, m) = (state.grid.nx, state.grid.ny, state.ncomp());
    let mut data = vec![0.0; (nx + 2) * (ny + 2) * m];
    let idx = |i: usize, j: usize| (j * (nx + 2) + i) * m;
    for j in 0..ny {
        for i in 0..nx {
            let src = state.cell(i, j);
            data[idx(i + 1, j + 1)..idx(i + 1, j + 1) + m].copy_from_slice(src);
        }
    }
    // x ghosts
    for j in 0..ny {
        let (left, right) = match bc_x {
            BoundaryCondition::Periodic => (state.cell(nx - 1, j), state.cell(0, j)),
            BoundaryCondition::Outflow => (state.cell(0, j), state.cell(nx - 1, j)),
        };
        data[idx(0, j + 1)..idx(0, j + 1) + m].copy_from_slice(left);
        data[idx(nx + 1, j + 1)..idx(nx + 1, j + 1) + m].copy_from_slice(right);
    }
    // y ghosts (corners are never read by the face loops)
    for i in 0..nx {
        let (bottom, top) = match bc_y {
            BoundaryCondition::Periodic => (state.cell(i, ny - 1), state.cell(i, 0)),
            BoundaryCondition::Outflow => (state.cell(i, 0), state.cell(i, ny - 1)),
        };
        data[idx(i + 1, 0)..idx(i + 1, 0) + m].copy_from_slice(bottom);
        data[idx(i + 1, ny + 1)..idx(i + 1, ny + 1) + m].copy_from_slice(top);
    }
    let _ = ny;
    Padded { nx, m, data }
}

/// Ghost-extended view produced by [`apply_bc`]; indices are offset by one.
pub struct Padded {
    nx: usize,
    m: usize,
    data: Vec<f64>,
}

impl Padded {
    /// `(-1..=nx, -1..=ny)` addressed as `(i+1, j+1)`.
    #[inline]
    pub fn cell(&self, ip: usize, jp: usize) -> &[f64] {
        let base = (jp * (self.nx + 2) + ip) * self.m;
        &self.data[base..base + self.m]
    }
}

/// Diagnostics from one accepted step.
#[derive(Debug, Clone)]
pub struct StepInfo {
    pub dt: f64,
    pub max_speed_x: f64,
    pub max_speed_y: f64,
    /// Set when the explicit friction update is outside its stability
    /// heuristic `Δt·(2N+1)(ν/λ)(1 + λ·max C_ij/h) ≤ 1`.
    pub stiff_source: bool,
}

/// One explicit Euler step. `dt_cap` clips the CFL step (used to land
/// exactly on output times); the taken `dt` is reported back.
pub fn step(
    state: &FieldState,
    ctx: &SolverContext,
    dt_cap: f64,
) -> Result<(FieldState, StepInfo), SolverError> {
    let grid = state.grid;
    let (nx, ny) = (grid.nx, grid.ny);
    let m = state.ncomp();
    let g = ctx.g();

    // Global directional wave speeds for the CFL step.
    let mut sx: f64 = 0.0;
    let mut sy: f64 = 0.0;
    let mut h_min = f64::INFINITY;
    for j in 0..ny {
        for i in 0..nx {
            let cell = state.cell(i, j);
            if cell[model::IH] <= H_DRY {
                return Err(SolverError::DryCell { i, j, t: state.time, h: cell[model::IH] });
            }
            let v = primitive_from_slice(cell, g)?;
            sx = sx.max(ctx.speed(&v, Direction::X)?);
            sy = sy.max(ctx.speed(&v, Direction::Y)?);
            h_min = h_min.min(v.h);
        }
    }
    let dt_cfl = ctx.config.cfl / (sx / grid.dx + sy / grid.dy);
    let dt = dt_cfl.min(dt_cap);
    debug_assert!(dt > 0.0 && dt.is_finite());

    let padded = apply_bc(state, ctx.config.bc_x, ctx.config.bc_y);
    let mut next = state.clone();
    next.time = state.time + dt;

    // x faces: face f sits between interior cells f-1 and f.
    let cx = dt / grid.dx;
    for j in 0..ny {
        for f in 0..=nx {
            let ul = padded.cell(f, j + 1);
            let ur = padded.cell(f + 1, j + 1);
            let (d_minus, d_plus) = interface_fluctuations(ul, ur, Direction::X, ctx)?;
            if f > 0 {
                let cell = next.cell_mut(f - 1, j);
                for c in 0..m {
                    cell[c] -= cx * d_minus[c];
                }
            }
            if f < nx {
                let cell = next.cell_mut(f, j);
                for c in 0..m {
                    cell[c] -= cx * d_plus[c];
                }
            }
        }
    }
    // y faces
    let cy = dt / grid.dy;
    for fj in 0..=ny {
        for i in 0..nx {
            let ul = padded.cell(i + 1, fj);
            let ur = padded.cell(i + 1, fj + 1);
            let (d_minus, d_plus) = interface_fluctuations(ul, ur, Direction::Y, ctx)?;
            if fj > 0 {
                let cell = next.cell_mut(i, fj - 1);
                for c in 0..m {
                    cell[c] -= cy * d_minus[c];
                }
            }
            if fj < ny {
                let cell = next.cell_mut(i, fj);
                for c in 0..m {
                    cell[c] -= cy * d_plus[c];
                }
            }
        }
    }

    // Explicit source, evaluated at the old state.
    let constants = ctx.assembler.constants();
    if ctx.config.source.nu > 0.0
        || ctx.config.source.e[0] != 0.0
        || ctx.config.source.e[1] != 0.0
        || ctx.config.source.bottom_grad != [0.0, 0.0]
    {
        for j in 0..ny {
            for i in 0..nx {
                let v = primitive_from_slice(state.cell(i, j), g)?;
                let s = model::source_term(&v, &ctx.config.source, constants)?;
                let cell = next.cell_mut(i, j);
                for c in 0..m {
                    cell[c] += dt * s[c];
                }
            }
        }
    }

    // Positivity clamp and sanity scan.
    for j in 0..ny {
        for i in 0..nx {
            let t = next.time;
            let cell = next.cell_mut(i, j);
            for (c, v) in cell.iter().enumerate() {
                if !v.is_finite() {
                    return Err(SolverError::NonFinite { i, j, comp: c, t });
                }
            }
            let h = cell[model::IH];
            if h < 0.0 {
                return Err(SolverError::DryCell { i, j, t, h });
            }
            if h < H_DRY {
                cell[model::IH] = H_DRY;
                for v in cell.iter_mut().skip(1) {
                    *v = 0.0;
                }
            }
        }
    }

    // Friction stiffness heuristic.
    let n = ctx.order;
    let mut max_c: f64 = 0.0;
    for i in 1..=n {
        for jj in 1..=n {
            max_c = max_c.max(constants.c(i, jj).abs());
        }
    }
    let src = &ctx.config.source;
    let friction = if src.nu > 0.0 { src.nu / src.lambda } else { 0.0 };
    let stiff_source =
        dt * (2 * n + 1) as f64 * friction * (1.0 + src.lambda * max_c / h_min) > 1.0;

    Ok((next, StepInfo { dt, max_speed_x: sx, max_speed_y: sy, stiff_source }))
}

/// Callbacks over an advancing run.
pub trait Observer {
    /// After every accepted step.
    fn on_step(&mut self, _state: &FieldState, _info: &StepInfo) {}
    /// At every requested output time (hit exactly by clipping `Δt`).
    fn at_output_time(&mut self, _state: &FieldState) {}
}

/// Advance to `config.t_end`, clipping steps to land exactly on each output
/// time and on the final time. Deterministic: identical configurations
/// produce bitwise-identical trajectories.
pub fn run(
    mut state: FieldState,
    ctx: &SolverContext,
    output_times: &[f64],
    observers: &mut [&mut dyn Observer],
) -> Result<FieldState, SolverError> {
    let t_end = ctx.config.t_end;
    let mut events: Vec<f64> = output_times
        .iter()
        .copied()
        .filter(|&t| t > state.time && t <= t_end)
        .collect();
    events.push(t_end);
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    events.dedup();

    let mut warned_stiff = false;
    for &event in &events {
        while state.time < event {
            let (next, info) = step(&state, ctx, event - state.time)?;
            state = next;
            if info.stiff_source && !warned_stiff {
                log::warn!(
                    "explicit friction update may be unstable: dt = {} exceeds the stiffness heuristic",
                    info.dt
                );
                warned_stiff = true;
            }
            for obs in observers.iter_mut() {
                obs.on_step(&state, &info);
            }
        }
        if output_times.contains(&event) || event == t_end {
            for obs in observers.iter_mut() {
                obs.at_output_time(&state);
            }
        }
    }
    Ok(state)
}

/// Records the discrete mass and momentum totals after every step.
#[derive(Debug, Default)]
pub struct ConservationMonitor {
    pub samples: Vec<ConservationSample>,
}

#[derive(Debug, Clone, Copy)]
pub struct ConservationSample {
    pub time: f64,
    pub mass: f64,
    pub momentum_x: f64,
    pub momentum_y: f64,
}

impl ConservationMonitor {
    pub fn record(&mut self, state: &FieldState) {
        self.samples.push(ConservationSample {
            time: state.time,
            mass: state.total(model::IH),
            momentum_x: state.total(model::IHU),
            momentum_y: state.total(model::IHV),
        });
    }
}

impl Observer for ConservationMonitor {
    fn on_step(&mut self, state: &FieldState, _info: &StepInfo) {
        self.record(state);
    }
}
