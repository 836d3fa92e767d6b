//! Legendre polynomials, quadrature nodes, and the moment-constant tensors.
//!
//! Two bases appear throughout the moment models:
//!
//! * `P_n(x)` on `[-1, 1]`, standardized by `P_n(1) = 1`;
//! * the scaled basis `φ_j(ζ) = P_j(1 - 2ζ)` on `[0, 1]`, which is orthogonal
//!   with `∫₀¹ φ_i φ_j dζ = δ_ij / (2j + 1)` and normalized by `φ_j(0) = 1`.
//!
//! The expansion coefficients of the velocity profile against `φ_j` couple
//! through three constant tensors:
//!
//! ```text
//! A_ijk = (2i+1) ∫₀¹ φ_i φ_j φ_k dζ
//! B_ijk = (2i+1) ∫₀¹ φ_i' (∫₀^ζ φ_j dζ̂) φ_k dζ
//! C_ij  =        ∫₀¹ φ_i' φ_j' dζ
//! ```
//!
//! All integrands are polynomials, so Gauss-Legendre quadrature of sufficient
//! degree computes them exactly to rounding.

/// Evaluate `P_n(x)` by the three-term recurrence
/// `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
pub fn legendre_eval(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return x;
    }
    let mut p_prev = 1.0;
    let mut p_curr = x;
    for k in 1..n {
        let p_next = ((2 * k + 1) as f64 * x * p_curr - k as f64 * p_prev) / (k + 1) as f64;
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Evaluate `P_n'(x)`.
///
/// Away from the endpoints this uses `(x² - 1) P_n' = n (x P_n - P_{n-1})`;
/// at `x = ±1` the limit `P_n'(±1) = (±1)^{n+1} n(n+1)/2` applies.
pub fn legendre_deriv_eval(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if (x - 1.0).abs() < 1e-14 {
        return (n * (n + 1)) as f64 / 2.0;
    }
    if (x + 1.0).abs() < 1e-14 {
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        return sign * (n * (n + 1)) as f64 / 2.0;
    }
    let p_n = legendre_eval(n, x);
    let p_nm1 = legendre_eval(n - 1, x);
    n as f64 * (x * p_n - p_nm1) / (x * x - 1.0)
}

/// Second derivative via the Legendre ODE `(1-x²) y'' = 2x y' - n(n+1) y`.
/// Used as the Newton slope when polishing roots of `P_n'`.
fn legendre_deriv2_eval(n: usize, x: f64) -> f64 {
    let denom = 1.0 - x * x;
    if denom.abs() < 1e-12 {
        // P_n''(±1) = (±1)^n (n-1)n(n+1)(n+2)/8, from the Gegenbauer limit.
        let v = ((n as i64 - 1) * n as i64 * (n as i64 + 1) * (n as i64 + 2)) as f64 / 8.0;
        return if x > 0.0 || n % 2 == 0 { v } else { -v };
    }
    (2.0 * x * legendre_deriv_eval(n, x) - (n * (n + 1)) as f64 * legendre_eval(n, x)) / denom
}

/// Scaled Legendre basis `φ_j(ζ) = P_j(1 - 2ζ)` on `[0, 1]`.
///
/// This is the unique polynomial family that is orthogonal on `[0, 1]` with
/// `∫₀¹ φ_i φ_j dζ = δ_ij/(2j+1)` and satisfies `φ_j(0) = 1`.
pub fn scaled_basis_eval(j: usize, zeta: f64) -> f64 {
    legendre_eval(j, 1.0 - 2.0 * zeta)
}

/// `φ_j'(ζ) = -2 P_j'(1 - 2ζ)`.
pub fn scaled_basis_deriv(j: usize, zeta: f64) -> f64 {
    -2.0 * legendre_deriv_eval(j, 1.0 - 2.0 * zeta)
}

/// Antiderivative `∫₀^ζ φ_j dζ̂` evaluated analytically through
/// `∫ P_j = (P_{j+1} - P_{j-1})/(2j+1)`, so no nested quadrature is needed.
pub fn scaled_basis_antideriv(j: usize, zeta: f64) -> f64 {
    assert!(j >= 1, "antiderivative only used for j >= 1");
    let x = 1.0 - 2.0 * zeta;
    (legendre_eval(j - 1, x) - legendre_eval(j + 1, x)) / (2.0 * (2 * j + 1) as f64)
}

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// Newton iteration with bisection fallback on a bracketing interval.
/// `f` must change sign over `[lo, hi]`.
fn refine_root(
    mut lo: f64,
    mut hi: f64,
    mut x: f64,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
) -> f64 {
    let (mut flo, fhi) = (f(lo), f(hi));
    debug_assert!(flo * fhi <= 0.0, "root not bracketed");
    for _ in 0..NEWTON_MAX_ITER {
        let fx = f(x);
        if fx.abs() <= NEWTON_TOL {
            return x;
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let dfx = df(x);
        let step = fx / dfx;
        let next = x - step;
        if !next.is_finite() || next <= lo || next >= hi {
            x = 0.5 * (lo + hi);
        } else if (next - x).abs() < 1e-16 * (1.0 + x.abs()) {
            return next;
        } else {
            x = next;
        }
    }
    x
}

/// Brackets of all sign changes of `f(cos θ)` on a uniform θ-grid. Roots of
/// `P_n` and `P_n'` are near-uniform in `θ = arccos x` with spacing about
/// `π/n`, so a grid of `4(n+1)` points isolates every root.
fn bracket_roots_theta(n: usize, count: usize, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let m = 4 * (n + 1);
    let xs: Vec<f64> = (0..=m)
        .map(|k| (std::f64::consts::PI * k as f64 / m as f64).cos())
        .collect();
    let mut brackets = Vec::with_capacity(count);
    let mut prev_x = xs[0];
    let mut prev_f = f(prev_x);
    for &x in &xs[1..] {
        let fx = f(x);
        if prev_f == 0.0 {
            brackets.push((prev_x, prev_x));
        } else if prev_f * fx < 0.0 {
            brackets.push((x.min(prev_x), x.max(prev_x)));
        }
        prev_x = x;
        prev_f = fx;
    }
    assert_eq!(brackets.len(), count, "expected {count} sign changes");
    brackets
}

/// Enforce exact antisymmetry of a symmetric root set (keeps downstream
/// spectra symmetric to the bit).
fn symmetrize(roots: &mut [f64]) {
    let n = roots.len();
    for i in 0..n / 2 {
        let m = 0.5 * (roots[i] - roots[n - 1 - i]);
        roots[i] = m;
        roots[n - 1 - i] = -m;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
}

/// The `n` roots of `P_n`, sorted ascending. These are the Gauss-Legendre
/// quadrature points in `(-1, 1)`.
pub fn gauss_legendre_nodes(n: usize) -> Vec<f64> {
    assert!(n >= 1);
    let mut roots: Vec<f64> = bracket_roots_theta(n, n, |x| legendre_eval(n, x))
        .into_iter()
        .map(|(lo, hi)| {
            refine_root(
                lo,
                hi,
                0.5 * (lo + hi),
                |x| legendre_eval(n, x),
                |x| legendre_deriv_eval(n, x),
            )
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    symmetrize(&mut roots);
    roots
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`; exact for polynomials of
/// degree `2n - 1`. Weights via `w_i = 2 / ((1 - x_i²) P_n'(x_i)²)`.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nodes = gauss_legendre_nodes(n);
    let weights = nodes
        .iter()
        .map(|&x| {
            let d = legendre_deriv_eval(n, x);
            2.0 / ((1.0 - x * x) * d * d)
        })
        .collect();
    (nodes, weights)
}

/// The `n - 1` roots of `P_n'`, sorted ascending: the interior Gauss-Lobatto
/// points. Each lies strictly between two consecutive roots of `P_n`.
pub fn gauss_lobatto_interior_nodes(n: usize) -> Vec<f64> {
    assert!(n >= 2, "P_n' has interior roots only for n >= 2");
    let pn_roots = gauss_legendre_nodes(n);
    let mut roots = Vec::with_capacity(n - 1);
    for w in pn_roots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let r = refine_root(
            lo,
            hi,
            0.5 * (lo + hi),
            |x| legendre_deriv_eval(n, x),
            |x| legendre_deriv2_eval(n, x),
        );
        roots.push(r);
    }
    symmetrize(&mut roots);
    roots
}

/// Number of moments in the expansion of the velocity profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyBasisSpec {
    order_n: usize,
}

impl PolyBasisSpec {
    pub fn new(order_n: usize) -> Self {
        assert!(order_n >= 1, "moment order must be at least 1");
        Self { order_n }
    }

    pub fn order(&self) -> usize {
        self.order_n
    }
}

/// The coupling tensors `A_ijk`, `B_ijk` (symmetrized index range `1..=N`)
/// and `C_ij`. Immutable after construction and freely shareable.
#[derive(Debug, Clone)]
pub struct MomentConstants {
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl MomentConstants {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `A_ijk`, 1-based indices.
    #[inline]
    pub fn a(&self, i: usize, j: usize, k: usize) -> f64 {
        self.a[self.idx3(i, j, k)]
    }

    /// `B_ijk`, 1-based indices.
    #[inline]
    pub fn b(&self, i: usize, j: usize, k: usize) -> f64 {
        self.b[self.idx3(i, j, k)]
    }

    /// `C_ij`, 1-based indices.
    #[inline]
    pub fn c(&self, i: usize, j: usize) -> f64 {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.c[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    fn idx3(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && (1..=self.n).contains(&k)
        );
        ((i - 1) * self.n + (j - 1)) * self.n + (k - 1)
    }
}

/// Compute the moment-constant tensors by Gauss-Legendre quadrature mapped to
/// `[0, 1]`. The quadrature degree `⌈(3N+2)/2⌉` is exact for every integrand
/// (their degrees do not exceed `3N + 1`).
pub fn compute_moment_constants(spec: PolyBasisSpec) -> MomentConstants {
    let n = spec.order();
    let quad_points = (3 * n + 2).div_ceil(2);
    let (nodes, weights) = gauss_legendre_rule(quad_points);
    // Map to [0, 1]: ζ = (x + 1)/2, weight w/2.
    let zetas: Vec<f64> = nodes.iter().map(|&x| 0.5 * (x + 1.0)).collect();
    let ws: Vec<f64> = weights.iter().map(|&w| 0.5 * w).collect();

    // Tabulate φ_j, φ_j', and ∫φ_j at the quadrature points.
    let phi: Vec<Vec<f64>> = (1..=n)
        .map(|j| zetas.iter().map(|&z| scaled_basis_eval(j, z)).collect())
        .collect();
    let dphi: Vec<Vec<f64>> = (1..=n)
        .map(|j| zetas.iter().map(|&z| scaled_basis_deriv(j, z)).collect())
        .collect();
    let iphi: Vec<Vec<f64>> = (1..=n)
        .map(|j| zetas.iter().map(|&z| scaled_basis_antideriv(j, z)).collect())
        .collect();

    let mut a = vec![0.0; n * n * n];
    let mut b = vec![0.0; n * n * n];
    let mut c = vec![0.0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let mut sa = 0.0;
                let mut sb = 0.0;
                for (q, &w) in ws.iter().enumerate() {
                    sa += w * phi[i - 1][q] * phi[j - 1][q] * phi[k - 1][q];
                    sb += w * dphi[i - 1][q] * iphi[j - 1][q] * phi[k - 1][q];
                }
                let scale = (2 * i + 1) as f64;
                a[((i - 1) * n + (j - 1)) * n + (k - 1)] = scale * sa;
                b[((i - 1) * n + (j - 1)) * n + (k - 1)] = scale * sb;
            }
            let mut sc = 0.0;
            for (q, &w) in ws.iter().enumerate() {
                sc += w * dphi[i - 1][q] * dphi[j - 1][q];
            }
            c[(i - 1) * n + (j - 1)] = sc;
        }
    }
    MomentConstants { n, a, b, c }
}
