//! Plot-ready data products: full-field snapshots and 1D cut-lines.
//!
//! Snapshots carry a `# key = value` header (grid, time, order, variant)
//! followed by CSV rows `(i, j, x, y, h, u_m, v_m, a1..aN, b1..bN)`.
//! Cut-lines sample the rows/columns of cells nearest the midlines and the
//! main diagonal; values are written with shortest-round-trip formatting so
//! identical fields produce identical bytes.

use std::io::{self, Write};
use std::path::Path;

use crate::model::primitive_from_slice;
use crate::solver::FieldState;

/// Which 1D section of the field to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutLine {
    /// The cell row just above `y = 0.5` (exact midline for even `ny`).
    AlongX,
    /// The cell column just right of `x = 0.5`.
    AlongY,
    /// Cells `(i, i)` on the main diagonal.
    Diagonal,
}

impl CutLine {
    pub fn label(&self) -> &'static str {
        match self {
            CutLine::AlongX => "y0.5",
            CutLine::AlongY => "x0.5",
            CutLine::Diagonal => "diag",
        }
    }
}

/// One cut-line sample: abscissa along the cut, radius from the domain
/// center, and the primitive values.
#[derive(Debug, Clone)]
pub struct CutSample {
    pub s: f64,
    pub r: f64,
    pub h: f64,
    pub um: f64,
    pub vm: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Extract a cut-line. The radius is measured from the center of the domain.
pub fn extract_cutline(state: &FieldState, cut: CutLine, g: f64) -> Vec<CutSample> {
    let grid = state.grid;
    let (cx, cy) = (
        grid.x0 + 0.5 * grid.nx as f64 * grid.dx,
        grid.y0 + 0.5 * grid.ny as f64 * grid.dy,
    );
    let cells: Vec<(usize, usize, f64)> = match cut {
        CutLine::AlongX => {
            let j = grid.ny / 2;
            (0..grid.nx).map(|i| (i, j, grid.center(i, j).0)).collect()
        }
        CutLine::AlongY => {
            let i = grid.nx / 2;
            (0..grid.ny).map(|j| (i, j, grid.center(i, j).1)).collect()
        }
        CutLine::Diagonal => {
            let n = grid.nx.min(grid.ny);
            (0..n)
                .map(|i| {
                    // arc length along y = x
                    let (x, _) = grid.center(i, i);
                    (i, i, std::f64::consts::SQRT_2 * x)
                })
                .collect()
        }
    };
    cells
        .into_iter()
        .map(|(i, j, s)| {
            let v = primitive_from_slice(state.cell(i, j), g).expect("wet state");
            let (x, y) = grid.center(i, j);
            let r = ((x - cx) * (x - cx) + (y - cy) * (y - cy)).sqrt();
            CutSample { s, r, h: v.h, um: v.um, vm: v.vm, alpha: v.alpha, beta: v.beta }
        })
        .collect()
}

/// Write a cut-line as CSV: `s, r, h, u_m, v_m, a1..aN, b1..bN`.
pub fn write_cutline(
    w: &mut impl Write,
    samples: &[CutSample],
    order: usize,
) -> io::Result<()> {
    write!(w, "s,r,h,u_m,v_m")?;
    for i in 1..=order {
        write!(w, ",a{i}")?;
    }
    for i in 1..=order {
        write!(w, ",b{i}")?;
    }
    writeln!(w)?;
    for c in samples {
        write!(w, "{},{},{},{},{}", c.s, c.r, c.h, c.um, c.vm)?;
        for a in &c.alpha {
            write!(w, ",{a}")?;
        }
        for b in &c.beta {
            write!(w, ",{b}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_cutline_file(
    path: &Path,
    samples: &[CutSample],
    order: usize,
) -> io::Result<()> {
    let mut f = io::BufWriter::new(std::fs::File::create(path)?);
    write_cutline(&mut f, samples, order)
}

/// Write a full snapshot.
pub fn write_snapshot(
    w: &mut impl Write,
    state: &FieldState,
    variant_name: &str,
    g: f64,
) -> io::Result<()> {
    let grid = state.grid;
    writeln!(w, "# nx = {}", grid.nx)?;
    writeln!(w, "# ny = {}", grid.ny)?;
    writeln!(w, "# dx = {}", grid.dx)?;
    writeln!(w, "# dy = {}", grid.dy)?;
    writeln!(w, "# t = {}", state.time)?;
    writeln!(w, "# order = {}", state.order)?;
    writeln!(w, "# variant = {variant_name}")?;
    write!(w, "i,j,x,y,h,u_m,v_m")?;
    for i in 1..=state.order {
        write!(w, ",a{i}")?;
    }
    for i in 1..=state.order {
        write!(w, ",b{i}")?;
    }
    writeln!(w)?;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let (x, y) = grid.center(i, j);
            let v = primitive_from_slice(state.cell(i, j), g).expect("wet state");
            write!(w, "{i},{j},{x},{y},{},{},{}", v.h, v.um, v.vm)?;
            for a in &v.alpha {
                write!(w, ",{a}")?;
            }
            for b in &v.beta {
                write!(w, ",{b}")?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn write_snapshot_file(
    path: &Path,
    state: &FieldState,
    variant_name: &str,
    g: f64,
) -> io::Result<()> {
    let mut f = io::BufWriter::new(std::fs::File::create(path)?);
    write_snapshot(&mut f, state, variant_name, g)
}
