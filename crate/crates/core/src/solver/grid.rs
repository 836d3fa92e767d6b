//! Uniform Cartesian grid and the cell-centered field state.

use crate::model::{ncomp, primitive_from_slice, ModelError, PrimitiveState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2d {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Grid2d {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64, x0: f64, y0: f64) -> Self {
        assert!(nx >= 4 && ny >= 4, "grid must be at least 4x4");
        assert!(dx > 0.0 && dy > 0.0);
        Self { nx, ny, dx, dy, x0, y0 }
    }

    pub fn unit_square(nx: usize, ny: usize) -> Self {
        Self::new(nx, ny, 1.0 / nx as f64, 1.0 / ny as f64, 0.0, 0.0)
    }

    /// Cell-center coordinates.
    #[inline]
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x0 + (i as f64 + 0.5) * self.dx,
            self.y0 + (j as f64 + 0.5) * self.dy,
        )
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }
}

/// Cell-centered conserved fields at one time level. Layout: row-major over
/// `(j, i)` with the `2N+3` components contiguous per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub grid: Grid2d,
    pub order: usize,
    pub time: f64,
    data: Vec<f64>,
}

impl FieldState {
    pub fn new(grid: Grid2d, order: usize, time: f64) -> Self {
        let data = vec![0.0; grid.cell_count() * ncomp(order)];
        Self { grid, order, time, data }
    }

    /// Initialize from a pointwise primitive-state function of `(x, y)`.
    pub fn from_fn(
        grid: Grid2d,
        order: usize,
        time: f64,
        f: impl Fn(f64, f64) -> PrimitiveState,
    ) -> Self {
        let mut state = Self::new(grid, order, time);
        let m = ncomp(order);
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let (x, y) = grid.center(i, j);
                let v = f(x, y);
                debug_assert_eq!(v.order(), order);
                let u = v.to_conserved();
                state.cell_mut(i, j).copy_from_slice(&u.as_slice()[..m]);
            }
        }
        state
    }

    #[inline]
    pub fn ncomp(&self) -> usize {
        ncomp(self.order)
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> &[f64] {
        let m = self.ncomp();
        let base = (j * self.grid.nx + i) * m;
        &self.data[base..base + m]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let m = self.ncomp();
        let base = (j * self.grid.nx + i) * m;
        &mut self.data[base..base + m]
    }

    pub fn primitive(&self, i: usize, j: usize, g: f64) -> Result<PrimitiveState, ModelError> {
        primitive_from_slice(self.cell(i, j), g)
    }

    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Cell totals of a component, times the cell area: the discrete integral.
    pub fn total(&self, component: usize) -> f64 {
        let m = self.ncomp();
        let area = self.grid.dx * self.grid.dy;
        self.data.iter().skip(component).step_by(m).sum::<f64>() * area
    }
}
