//! Method-of-lines Burgers system on a Chebyshev collocation grid.
//!
//! The unknown is the matrix of nodal values at interior collocation points,
//! `(N-1) × (M-1)` in two dimensions and `(N-1) × 1` in one. Boundary
//! contributions are folded in by extending the interior field with the
//! Dirichlet data and applying the full differentiation matrices, then
//! restricting the result to interior rows and columns. This is algebraically
//! the same as splitting the operators into interior blocks plus boundary
//! columns, including the advective coupling between the field and its
//! boundary values.

use std::fmt;
use std::sync::Arc;

use log::warn;
use nalgebra::DMatrix;

use crate::cheb::CollocationGrid;
use crate::{Error, Result};

/// Edge of the rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x = a`
    Left,
    /// `x = b`
    Right,
    /// `y = c`
    Bottom,
    /// `y = d`
    Top,
}

/// Dirichlet data `u = f(side, s, t)` where `s` is the coordinate along the
/// edge (ignored in one dimension).
pub trait BoundaryProvider: Send + Sync + fmt::Debug {
    fn value(&self, side: Side, coord: f64, t: f64) -> f64;

    /// Local Taylor coefficients in time, `[f(t), f'(t), f''(t)/2!, ...]` up
    /// to and including `order`.
    ///
    /// The default falls back to central differences of [`value`](Self::value)
    /// and loses accuracy quickly with the order; providers with analytic
    /// data should override it.
    fn taylor_coefficients(&self, side: Side, coord: f64, t: f64, order: usize) -> Vec<f64> {
        finite_difference_taylor(|s| self.value(side, coord, s), t, order, DEFAULT_FD_STEP)
    }

    /// The `k`-th local Taylor coefficient in time.
    fn taylor(&self, side: Side, coord: f64, t: f64, k: usize) -> f64 {
        self.taylor_coefficients(side, coord, t, k)[k]
    }

    /// `true` when the data vanish identically, which lets the system skip
    /// boundary bookkeeping altogether.
    fn is_homogeneous(&self) -> bool {
        false
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Taylor coefficients of `f` at `t` by second-order central differences.
///
/// The step for order `k` is `max(h_min, ε^{1/(k+2)})`, which balances
/// truncation against round-off for data whose derivatives are O(1).
pub fn finite_difference_taylor(f: impl Fn(f64) -> f64, t: f64, order: usize, h_min: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut factorial = 1.0;
    for k in 0..=order {
        if k > 0 {
            factorial *= k as f64;
        }
        if k == 0 {
            out.push(f(t));
            continue;
        }
        let h = h_min.max(f64::EPSILON.powf(1.0 / (k as f64 + 2.0)));
        // Δ^k f centred at t: Σ_j (-1)^j C(k, j) f(t + (k/2 - j) h)
        let mut binom = 1.0;
        let mut acc = 0.0;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(t + (0.5 * k as f64 - j as f64) * h);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        out.push(acc / h.powi(k as i32) / factorial);
    }
    out
}

/// Zero Dirichlet data on every edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct Homogeneous;

impl BoundaryProvider for Homogeneous {
    fn value(&self, _: Side, _: f64, _: f64) -> f64 {
        0.0
    }

    fn taylor_coefficients(&self, _: Side, _: f64, _: f64, order: usize) -> Vec<f64> {
        vec![0.0; order + 1]
    }

    fn is_homogeneous(&self) -> bool {
        true
    }
}

/// Boundary data from a closure, with finite-difference Taylor coefficients.
pub struct FnBoundary<F> {
    f: F,
    fd_step: f64,
}

impl<F> FnBoundary<F>
where
    F: Fn(Side, f64, f64) -> f64 + Send + Sync,
{
    pub fn new(f: F) -> Self {
        Self {
            f,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    pub fn with_fd_step(mut self, h: f64) -> Self {
        self.fd_step = h;
        self
    }
}

impl<F> fmt::Debug for FnBoundary<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnBoundary").field("fd_step", &self.fd_step).finish()
    }
}

impl<F> BoundaryProvider for FnBoundary<F>
where
    F: Fn(Side, f64, f64) -> f64 + Send + Sync,
{
    fn value(&self, side: Side, coord: f64, t: f64) -> f64 {
        (self.f)(side, coord, t)
    }

    fn taylor_coefficients(&self, side: Side, coord: f64, t: f64, order: usize) -> Vec<f64> {
        finite_difference_taylor(|s| (self.f)(side, coord, s), t, order, self.fd_step)
    }
}

/// Data that are polynomial in both the edge coordinate and time:
/// `f(side, s, t) = Σ_p Σ_q c[side][p][q] s^q t^p`. Taylor coefficients are
/// exact.
#[derive(Debug, Clone, Default)]
pub struct PolynomialBoundary {
    /// Indexed by `Side as usize`, then time power `p`, then space power `q`.
    coeffs: [Vec<Vec<f64>>; 4],
}

impl PolynomialBoundary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the coefficients for one side: `c[p][q]` multiplies `s^q t^p`.
    pub fn with_side(mut self, side: Side, c: Vec<Vec<f64>>) -> Self {
        self.coeffs[side as usize] = c;
        self
    }

    fn time_poly(&self, side: Side, coord: f64) -> Vec<f64> {
        self.coeffs[side as usize]
            .iter()
            .map(|row| row.iter().rev().fold(0.0, |acc, c| acc * coord + c))
            .collect()
    }
}

impl BoundaryProvider for PolynomialBoundary {
    fn value(&self, side: Side, coord: f64, t: f64) -> f64 {
        self.time_poly(side, coord).iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    fn taylor_coefficients(&self, side: Side, coord: f64, t: f64, order: usize) -> Vec<f64> {
        let p = self.time_poly(side, coord);
        (0..=order)
            .map(|k| {
                // Σ_{j≥k} C(j, k) p_j t^{j-k}
                let mut acc = 0.0;
                for (j, pj) in p.iter().enumerate().skip(k) {
                    acc += binomial(j, k) * pj * t.powi((j - k) as i32);
                }
                acc
            })
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Nodal values at interior collocation points.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorField(DMatrix<f64>);

impl InteriorField {
    pub fn new(values: DMatrix<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(shape: (usize, usize)) -> Self {
        Self(DMatrix::zeros(shape.0, shape.1))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    /// Maximum absolute nodal value.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl From<DMatrix<f64>> for InteriorField {
    fn from(m: DMatrix<f64>) -> Self {
        Self(m)
    }
}

/// Local differential-transform coefficients `β̄(k)` of the interior field
/// about the expansion point `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoeffs {
    t: f64,
    coeffs: Vec<InteriorField>,
}

impl TaylorCoeffs {
    pub fn new(t: f64, coeffs: Vec<InteriorField>) -> Self {
        Self { t, coeffs }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn coeffs(&self) -> &[InteriorField] {
        &self.coeffs
    }

    /// Highest available order.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Σ_{k ≤ order} β̄(k) h^k` by Horner's rule.
    pub fn evaluate(&self, h: f64, order: usize) -> InteriorField {
        let order = order.min(self.order());
        let mut acc = self.coeffs[order].as_matrix().clone();
        for k in (0..order).rev() {
            acc *= h;
            acc += self.coeffs[k].as_matrix();
        }
        InteriorField(acc)
    }
}

/// Interior-row restrictions of one axis' differentiation operators.
#[derive(Debug, Clone)]
struct AxisOperators {
    grid: CollocationGrid,
    first: DMatrix<f64>,
    second: DMatrix<f64>,
    /// Interior rows of the first-derivative matrix, `(N-1) × (N+1)`.
    first_rows: DMatrix<f64>,
    second_rows: DMatrix<f64>,
}

impl AxisOperators {
    fn new(grid: &CollocationGrid) -> Self {
        let d = grid.diff_matrices();
        let n = grid.degree();
        let first_rows = d.first.rows(1, n - 1).into_owned();
        let second_rows = d.second.rows(1, n - 1).into_owned();
        Self {
            grid: grid.clone(),
            first: d.first,
            second: d.second,
            first_rows,
            second_rows,
        }
    }

    fn interior(&self) -> usize {
        self.grid.degree() - 1
    }
}

/// The interior-to-interior operator blocks `Ā`, `B̄` and the boundary
/// columns of each axis.
#[derive(Debug, Clone)]
pub struct InteriorBlocks {
    pub first_x: DMatrix<f64>,
    pub second_x: DMatrix<f64>,
    /// Columns 0 and N of the interior rows of `A_x`, `(N-1) × 2`.
    pub first_x_boundary: DMatrix<f64>,
    pub second_x_boundary: DMatrix<f64>,
    pub first_y: Option<DMatrix<f64>>,
    pub second_y: Option<DMatrix<f64>>,
    pub first_y_boundary: Option<DMatrix<f64>>,
    pub second_y_boundary: Option<DMatrix<f64>>,
}

/// Taylor coefficients of the boundary data about one time, for every edge
/// node, indexed `[order][node]`.
#[derive(Debug, Clone)]
pub struct BoundarySeries {
    t: f64,
    left: Vec<Vec<f64>>,
    right: Vec<Vec<f64>>,
    bottom: Vec<Vec<f64>>,
    top: Vec<Vec<f64>>,
}

impl BoundarySeries {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn order(&self) -> usize {
        self.left.len().saturating_sub(1)
    }
}

/// Which terms of the Burgers operator are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Advection {
    /// `u_t + u·∇u = εΔu`
    Nonlinear,
    /// Pure diffusion `u_t = εΔu`; used to compare against linear reference
    /// integrators.
    Disabled,
}

/// Semi-discrete Burgers system `dβ/dt = f(β, t)`.
#[derive(Debug, Clone)]
pub struct SemiDiscreteSystem {
    eps: f64,
    x: AxisOperators,
    y: Option<AxisOperators>,
    bc: Arc<dyn BoundaryProvider>,
    advection: Advection,
}

impl SemiDiscreteSystem {
    /// Assembles the system on one grid per axis (one or two axes).
    pub fn assemble(grids: &[CollocationGrid], eps: f64, bc: Arc<dyn BoundaryProvider>) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter(format!("viscosity must be positive, got {eps}")));
        }
        let (x, y) = match grids {
            [gx] => (AxisOperators::new(gx), None),
            [gx, gy] => (AxisOperators::new(gx), Some(AxisOperators::new(gy))),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "expected one or two grids, got {}",
                    grids.len()
                )))
            }
        };
        Ok(Self {
            eps,
            x,
            y,
            bc,
            advection: Advection::Nonlinear,
        })
    }

    pub fn with_advection(mut self, advection: Advection) -> Self {
        self.advection = advection;
        self
    }

    pub fn dim(&self) -> usize {
        if self.y.is_some() {
            2
        } else {
            1
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn advection(&self) -> Advection {
        self.advection
    }

    pub fn grid_x(&self) -> &CollocationGrid {
        &self.x.grid
    }

    pub fn grid_y(&self) -> Option<&CollocationGrid> {
        self.y.as_ref().map(|a| &a.grid)
    }

    pub fn bc(&self) -> &Arc<dyn BoundaryProvider> {
        &self.bc
    }

    pub fn interior_shape(&self) -> (usize, usize) {
        (self.x.interior(), self.y.as_ref().map_or(1, |a| a.interior()))
    }

    /// Number of scalar unknowns.
    pub fn unknowns(&self) -> usize {
        let (r, c) = self.interior_shape();
        r * c
    }

    fn full_shape(&self) -> (usize, usize) {
        (self.x.grid.len(), self.y.as_ref().map_or(1, |a| a.grid.len()))
    }

    fn check_shape(&self, m: &DMatrix<f64>) -> Result<()> {
        if m.shape() != self.interior_shape() {
            return Err(Error::ShapeMismatch {
                expected: self.interior_shape(),
                got: m.shape(),
            });
        }
        Ok(())
    }

    pub fn interior_blocks(&self) -> InteriorBlocks {
        let split = |ax: &AxisOperators| {
            let n = ax.grid.degree();
            let inner = |m: &DMatrix<f64>| m.view((1, 1), (n - 1, n - 1)).into_owned();
            let bnd = |m: &DMatrix<f64>| {
                let mut b = DMatrix::zeros(n - 1, 2);
                b.set_column(0, &m.column(0).rows(1, n - 1));
                b.set_column(1, &m.column(n).rows(1, n - 1));
                b
            };
            (inner(&ax.first), inner(&ax.second), bnd(&ax.first), bnd(&ax.second))
        };
        let (first_x, second_x, first_x_boundary, second_x_boundary) = split(&self.x);
        let ys = self.y.as_ref().map(split);
        InteriorBlocks {
            first_x,
            second_x,
            first_x_boundary,
            second_x_boundary,
            first_y: ys.as_ref().map(|s| s.0.clone()),
            second_y: ys.as_ref().map(|s| s.1.clone()),
            first_y_boundary: ys.as_ref().map(|s| s.2.clone()),
            second_y_boundary: ys.map(|s| s.3),
        }
    }

    /// Samples `g(x, y)` at interior nodes (`y = 0` in one dimension).
    ///
    /// Logs a warning when `g` disagrees with the boundary data at `t = 0`
    /// on the domain corners by more than `1e-8`.
    pub fn initial_field(&self, g: impl Fn(f64, f64) -> f64) -> InteriorField {
        let mismatch = self.corner_mismatch(&g);
        if mismatch > 1e-8 {
            warn!("initial condition disagrees with boundary data at the corners by {mismatch:e}");
        }
        let xs = self.x.grid.interior_nodes();
        let (rows, cols) = self.interior_shape();
        let m = match &self.y {
            None => DMatrix::from_fn(rows, 1, |i, _| g(xs[i], 0.0)),
            Some(ay) => {
                let ys = ay.grid.interior_nodes();
                DMatrix::from_fn(rows, cols, |i, j| g(xs[i], ys[j]))
            }
        };
        InteriorField(m)
    }

    /// Largest disagreement between `g` and the boundary data at `t = 0` on
    /// the domain corners (the interval endpoints in one dimension).
    pub fn corner_mismatch(&self, g: &impl Fn(f64, f64) -> f64) -> f64 {
        let (a, b) = (self.x.grid.a(), self.x.grid.b());
        match &self.y {
            None => {
                let l = (g(a, 0.0) - self.bc.value(Side::Left, 0.0, 0.0)).abs();
                let r = (g(b, 0.0) - self.bc.value(Side::Right, 0.0, 0.0)).abs();
                l.max(r)
            }
            Some(ay) => {
                let (c, d) = (ay.grid.a(), ay.grid.b());
                let mut worst = 0.0f64;
                for &(x, y) in &[(a, c), (a, d), (b, c), (b, d)] {
                    let gv = g(x, y);
                    let xs = if x == a { Side::Left } else { Side::Right };
                    let ys = if y == c { Side::Bottom } else { Side::Top };
                    worst = worst
                        .max((gv - self.bc.value(xs, y, 0.0)).abs())
                        .max((gv - self.bc.value(ys, x, 0.0)).abs());
                }
                worst
            }
        }
    }

    /// Taylor coefficients of the boundary data at `t` up to `order`, or
    /// `None` for homogeneous data.
    pub fn boundary_series(&self, t: f64, order: usize) -> Option<BoundarySeries> {
        if self.bc.is_homogeneous() {
            return None;
        }
        let along = |side: Side, coords: &[f64]| -> Vec<Vec<f64>> {
            let per_node: Vec<Vec<f64>> = coords
                .iter()
                .map(|&s| self.bc.taylor_coefficients(side, s, t, order))
                .collect();
            (0..=order)
                .map(|k| per_node.iter().map(|c| c[k]).collect())
                .collect()
        };
        let (left, right, bottom, top) = match &self.y {
            None => (along(Side::Left, &[0.0]), along(Side::Right, &[0.0]), vec![], vec![]),
            Some(ay) => {
                let ys = ay.grid.nodes();
                let xs = self.x.grid.nodes();
                (
                    along(Side::Left, ys),
                    along(Side::Right, ys),
                    along(Side::Bottom, xs),
                    along(Side::Top, xs),
                )
            }
        };
        Some(BoundarySeries {
            t,
            left,
            right,
            bottom,
            top,
        })
    }

    /// Embeds interior values into a full-grid matrix whose edges carry
    /// `edge(side, node)`.
    fn embed(&self, interior: &DMatrix<f64>, edge: impl Fn(Side, usize) -> f64) -> DMatrix<f64> {
        let (nr, nc) = self.full_shape();
        let mut full = DMatrix::zeros(nr, nc);
        match &self.y {
            None => {
                full.view_mut((1, 0), (nr - 2, 1)).copy_from(interior);
                full[(0, 0)] = edge(Side::Left, 0);
                full[(nr - 1, 0)] = edge(Side::Right, 0);
            }
            Some(_) => {
                full.view_mut((1, 1), (nr - 2, nc - 2)).copy_from(interior);
                for j in 0..nc {
                    full[(0, j)] = edge(Side::Left, j);
                    full[(nr - 1, j)] = edge(Side::Right, j);
                }
                for i in 1..nr - 1 {
                    full[(i, 0)] = edge(Side::Bottom, i);
                    full[(i, nc - 1)] = edge(Side::Top, i);
                }
            }
        }
        full
    }

    /// Full-grid field carrying the boundary data at time `t`.
    pub fn extend(&self, beta: &InteriorField, t: f64) -> Result<DMatrix<f64>> {
        self.check_shape(beta.as_matrix())?;
        if self.bc.is_homogeneous() {
            return Ok(self.embed(beta.as_matrix(), |_, _| 0.0));
        }
        let xs = self.x.grid.nodes();
        let ys = self.y.as_ref().map(|a| a.grid.nodes());
        Ok(self.embed(beta.as_matrix(), |side, k| {
            let coord = match (side, ys) {
                (_, None) => 0.0,
                (Side::Left | Side::Right, Some(ys)) => ys[k],
                (Side::Bottom | Side::Top, _) => xs[k],
            };
            self.bc.value(side, coord, t)
        }))
    }

    fn embed_series(&self, interior: &DMatrix<f64>, series: Option<&BoundarySeries>, k: usize) -> DMatrix<f64> {
        match series {
            None => self.embed(interior, |_, _| 0.0),
            Some(s) => self.embed(interior, |side, node| match side {
                Side::Left => s.left[k][node],
                Side::Right => s.right[k][node],
                Side::Bottom => s.bottom[k][node],
                Side::Top => s.top[k][node],
            }),
        }
    }

    /// Interior restrictions of `u_x + u_y` and `u_xx + u_yy` of a full field.
    fn derivatives(&self, full: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
        match &self.y {
            None => (&self.x.first_rows * full, &self.x.second_rows * full),
            Some(ay) => {
                let (nr, nc) = full.shape();
                let cols = full.columns(1, nc - 2);
                let rows = full.rows(1, nr - 2);
                let mut grad = &self.x.first_rows * cols;
                grad += rows * ay.first_rows.transpose();
                let mut lap = &self.x.second_rows * cols;
                lap += rows * ay.second_rows.transpose();
                (grad, lap)
            }
        }
    }

    /// Right-hand side `ε Δu − u (u_x + u_y)` at the interior nodes.
    pub fn rhs(&self, beta: &InteriorField, t: f64) -> Result<InteriorField> {
        let full = self.extend(beta, t)?;
        let (grad, lap) = self.derivatives(&full);
        let mut out = lap * self.eps;
        if self.advection == Advection::Nonlinear {
            out -= beta.as_matrix().component_mul(&grad);
        }
        Ok(InteriorField(out))
    }

    /// `β̄(k+1)` from `β̄(0..=k)` by the differential-transform recurrence.
    pub fn dt_recurrence(&self, tc: &TaylorCoeffs, k: usize) -> Result<InteriorField> {
        if tc.coeffs.len() < k + 1 {
            return Err(Error::MissingCoefficients {
                needed: k,
                available: tc.coeffs.len(),
            });
        }
        for c in &tc.coeffs[..=k] {
            self.check_shape(c.as_matrix())?;
        }
        let series = self.boundary_series(tc.t, k);
        let grads: Vec<DMatrix<f64>> = (0..=k)
            .map(|s| {
                let full = self.embed_series(tc.coeffs[s].as_matrix(), series.as_ref(), s);
                self.derivatives(&full).0
            })
            .collect();
        let full_k = self.embed_series(tc.coeffs[k].as_matrix(), series.as_ref(), k);
        let lap = self.derivatives(&full_k).1;
        let coeffs: Vec<&DMatrix<f64>> = tc.coeffs.iter().map(|c| c.as_matrix()).collect();
        Ok(InteriorField(self.combine(&coeffs, &grads, lap, k)))
    }

    /// `(ε lap − Σ_s β̄(s) ⊙ grad(k−s)) / (k+1)`.
    fn combine(&self, coeffs: &[&DMatrix<f64>], grads: &[DMatrix<f64>], lap: DMatrix<f64>, k: usize) -> DMatrix<f64> {
        let mut acc = lap * self.eps;
        if self.advection == Advection::Nonlinear {
            let (r, c) = acc.shape();
            for s in 0..=k {
                let a = coeffs[s];
                let g = &grads[k - s];
                for j in 0..c {
                    for i in 0..r {
                        acc[(i, j)] -= a[(i, j)] * g[(i, j)];
                    }
                }
            }
        }
        acc / (k as f64 + 1.0)
    }

    /// Coefficients `β̄(0..=order)` about `t`, with `β̄(0) = beta0` and
    /// boundary data supplied by `series` (which must reach `order − 1`).
    pub(crate) fn expand(
        &self,
        beta0: &DMatrix<f64>,
        t: f64,
        series: Option<&BoundarySeries>,
        order: usize,
    ) -> Result<Vec<DMatrix<f64>>> {
        self.check_shape(beta0)?;
        if let Some(s) = series {
            if order > 0 && s.order() + 1 < order {
                return Err(Error::MissingCoefficients {
                    needed: order - 1,
                    available: s.order() + 1,
                });
            }
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(beta0.clone());
        let mut grads = Vec::with_capacity(order);
        for k in 0..order {
            let full = self.embed_series(&coeffs[k], series, k);
            let (grad, lap) = self.derivatives(&full);
            grads.push(grad);
            let refs: Vec<&DMatrix<f64>> = coeffs.iter().collect();
            let next = self.combine(&refs, &grads, lap, k);
            if next.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { t });
            }
            coeffs.push(next);
        }
        Ok(coeffs)
    }
}
